#!/usr/bin/env python3
"""Solve an SDPA sparse (.dat-s) file with cvxpy and print the objective.

The file describes SDPA's primal  min c^T x  s.t.  sum_i F_i x_i - F_0 psd.
This script solves the equivalent dual  max <F_0, Y>  s.t.  <F_i, Y> = c_i,
Y psd, which is the objective an SDPA-family solver reports. It is an
independent reader used to cross-check files written by `chromabound
export-sdpa`.

    python3 tools/solve_sdpa.py problem.dat-s [--solver CLARABEL]
"""
import argparse
import re
import sys

import cvxpy as cp
import numpy as np


def read_sdpa(path):
    tokens = []
    with open(path) as f:
        for line in f:
            if line.startswith('"') or line.startswith("*"):
                continue
            tokens.append(re.sub(r"[{}(),]", " ", line).split())
    lines = [t for t in tokens if t]
    m = int(lines[0][0])
    nblocks = int(lines[1][0])
    sizes = [int(x) for x in lines[2][:nblocks]]
    c = np.array([float(x) for x in lines[3][:m]])
    mats = [[np.zeros((abs(s), abs(s))) for s in sizes] for _ in range(m + 1)]
    for t in lines[4:]:
        k, b, i, j, v = int(t[0]), int(t[1]) - 1, int(t[2]) - 1, int(t[3]) - 1, float(t[4])
        mats[k][b][i, j] = v
        mats[k][b][j, i] = v
    return sizes, c, mats


def solve(path, solver):
    sizes, c, mats = read_sdpa(path)
    ys = []
    cons = []
    for s in sizes:
        if s > 0:
            y = cp.Variable((s, s), symmetric=True)
            cons.append(y >> 0)
        else:
            y = cp.Variable(-s, nonneg=True)
        ys.append(y)

    def pair(k):
        total = 0
        for b, s in enumerate(sizes):
            f = mats[k][b]
            if not f.any():
                continue
            total = total + (cp.sum(cp.multiply(f, ys[b])) if s > 0 else np.diag(f) @ ys[b])
        return total

    for i in range(1, len(c) + 1):
        cons.append(pair(i) == c[i - 1])
    prob = cp.Problem(cp.Maximize(pair(0)), cons)
    prob.solve(solver=solver)
    return prob.status, prob.value


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("file")
    ap.add_argument("--solver", default="CLARABEL")
    args = ap.parse_args()
    status, value = solve(args.file, args.solver)
    print(f"status {status}")
    print(f"objective {value:.10f}")
    return 0 if status == "optimal" else 2


if __name__ == "__main__":
    sys.exit(main())
