"""Print the per-point Weierstrass table of the (3,2) curve (-st+t^2 : s^2 ; t^3 : s^3).

Run:  python scripts/curve32_table.py
"""

from biweier.bipoly import parse_form
from biweier.curvemodel import make_rational
from biweier.oracle import verify_mixed_hessian_attribution, verify_oneone_total
from biweier.report import analyze_rational


def main():
    C = make_rational(*(parse_form(f) for f in ("-s*t+t^2", "s^2", "t^3", "s^3")))
    print(analyze_rational(C).table())
    print()
    for rep in (verify_mixed_hessian_attribution(C), verify_oneone_total(C)):
        print(f"{rep.name}: total {rep.total}, expected {rep.expected_total}, consistent={rep.ok}")


if __name__ == "__main__":
    main()
