"""Print P_{m,l,k} from each construction route, plus the operator D and its exponents.

    python3 scripts/compare_routes.py --m 1,2 --l 2,1 --k 3
"""

import argparse

from jpineiro.diffop import indicial_roots
from jpineiro.exact import as_fraction, format_rational
from jpineiro.pineiro import (
    DegenerateParameters,
    ParameterSet,
    build_annihilator,
    p_via_orthogonality,
    rodrigues,
    v0_via_recursion,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--m", default="2")
    parser.add_argument("--l", default="1")
    parser.add_argument("--k", default="2")
    args = parser.parse_args()
    p = ParameterSet.of(
        [as_fraction(v) for v in args.m.split(",")], [int(v) for v in args.l.split(",")], as_fraction(args.k)
    )
    print(p)
    routes = {"rodrigues": rodrigues, "orthogonality": p_via_orthogonality}
    if p.consistent:
        routes = {"recursion": v0_via_recursion, **routes}
    for name, route in routes.items():
        try:
            print(f"  {name:<14} {route(p)}")
        except DegenerateParameters as exc:
            print(f"  {name:<14} degenerate: {exc}")
    D = build_annihilator(p)
    print(f"D = {D}")
    for point in (0, 1, "infinity"):
        roots = ", ".join(format_rational(v) for v in indicial_roots(D, point).roots)
        print(f"  exponents at {point}: {roots}")


if __name__ == "__main__":
    main()
