#pragma once

#include <string>
#include <string_view>

#include "chromabound/sdp.hpp"

namespace chromabound {

// SDPA sparse (.dat-s) text. SDPA's primal is
//   min c^T x  s.t.  sum_i F_i x_i - F_0 psd,
// whose dual  max <F_0, Y>  s.t.  <F_i, Y> = c_i,  Y psd  is our problem with
// c = b, F_i = A_i and F_0 = -C. An external SDPA-family solver therefore
// reports objective values with the opposite sign of solve().
// Values are written with 17 significant digits, upper triangle only,
// 1-based indices, negative sizes for diagonal blocks.
std::string export_sdpa_sparse(const SdpProblem& problem, std::string_view comment = {});

// Reader for the same format. Accepts '"' and '*' comment lines and the
// usual "{ } ( ) ," punctuation around numbers. Throws ParseError.
SdpProblem parse_sdpa_sparse(std::string_view text);

}  // namespace chromabound
