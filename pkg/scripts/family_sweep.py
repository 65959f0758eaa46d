"""Sweep the family (s^b : t^b ; s^a : t^a) and check that every Wronskian is K s^n t^n.

Run:  python scripts/family_sweep.py [a,b ...]     (default: 2,3 3,4 2,5 3,5)
"""

import sys
import time

from biweier.bipoly import parse_form
from biweier.curvemodel import make_rational
from biweier.wronskian import xi_general


def family(a, b):
    return make_rational(parse_form(f"s^{b}"), parse_form(f"t^{b}"), parse_form(f"s^{a}"), parse_form(f"t^{a}"))


def predicted_n(a, b, alpha, beta):
    return (alpha + 1) * (beta + 1) * (beta * (a - 1) + alpha * (b - 1) - alpha * beta) // 2


def main(argv):
    pairs = [tuple(int(x) for x in p.split(",")) for p in argv] or [(2, 3), (3, 4), (2, 5), (3, 5)]
    bad = 0
    for a, b in pairs:
        C = family(a, b)
        for alpha in range(b):
            for beta in range(a):
                if (alpha, beta) == (0, 0):
                    continue
                t0 = time.perf_counter()
                w = xi_general(C, alpha, beta)
                n = predicted_n(a, b, alpha, beta)
                support = [k for k, c in enumerate(w.coeffs) if c]
                ok = w.degree == 2 * n and support == [n]
                bad += not ok
                K = w.coeffs[n] if ok else "-"
                print(f"({a},{b}) system ({alpha},{beta}): n={n:3d} K={K} {'ok' if ok else 'MISMATCH'} "
                      f"[{time.perf_counter() - t0:.3f}s]")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
