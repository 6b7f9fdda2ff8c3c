"""A fixed battery of cross-checks, deterministic for a given seed."""

from __future__ import annotations

from .census import run_census
from .compalg import (CompositionAlgebra, cayley_dickson, is_symmetric, isotope, unit_element,
                      unitalize)
from .exactcore import parse_field
from .functor import double_sign, double_sign_via_orders
from .session import Session
from .simgroup import random_isometry
from .triality import brute_force_triality, triality_components


def _check(name: str, passed: bool, **detail) -> dict:
    return {"name": name, "passed": bool(passed), **detail}


def run_selftest(seed: int = 0) -> dict:
    checks = []
    for spec in ("fp:3", "fp:5", "q"):
        for params in ((1, 1, 1), (1, 2, 3)):
            fld = parse_field(spec)
            if any(fld(p) == 0 for p in params):
                # e.g. 3 = 0 in F_3: the form would be degenerate
                try:
                    cayley_dickson(fld, *params)
                    rejected = False
                except ValueError:
                    rejected = True
                checks.append(_check(f"degenerate parameters rejected {spec} {params}", rejected))
                continue
            c = cayley_dickson(fld, *params)
            checks.append(_check(f"certificate {spec} {params}", c.multiplier == fld.one,
                                 multiplier=fld.to_str(c.multiplier)))

    s = Session("fp:3", (1, 1, 1), seed)
    q, fld = s.form, s.field
    rng = s.rng(2)
    agree = 0
    for _ in range(5):
        h = random_isometry(q, 4, rng)
        c = isotope(s.h0, random_isometry(q, 3, rng).mat, random_isometry(q, 2, rng).mat)
        pair = triality_components(c, h)
        agree += brute_force_triality(c, h) == (s.proj(pair.h1), s.proj(pair.h2))
    checks.append(_check("triality solver vs exhaustive search", agree == 5, agreed=agree))

    ok = 0
    for _ in range(5):
        x = s.proj(random_isometry(q, 4, rng))
        ok += (s.rho_power(1, s.rho_power(1, s.rho_power(1, x))) == x
               and s.rho_power(1, s.rho_power(2, x)) == x)
    checks.append(_check("rho has order three and rho_1 rho_2 = 1", ok == 5, agreed=ok))

    checks.append(_check("double sign of H0", double_sign(s.h0).pair == (1, 1)
                         and double_sign_via_orders(s, s.h0).pair == (1, 1)))
    checks.append(_check("double sign of S0", double_sign(s.s0).pair == (-1, -1)
                         and double_sign_via_orders(s, s.s0).pair == (-1, -1)))
    checks.append(_check("para-Hurwitz is symmetric and non-unital",
                         is_symmetric(s.s0) and unit_element(s.s0) is None))

    c = CompositionAlgebra.certify(isotope(s.h0, random_isometry(q, 5, rng).mat,
                                           random_isometry(q, 2, rng).mat))
    h, f, g, _ = unitalize(c)
    checks.append(_check("unitalization round trip", fld.equal(isotope(h, f, g).gamma, c.gamma)))

    report = run_census(s, 24, iso_samples=2)
    checks.append(_check("census cross-checks", report["samples"] == 24,
                         double_sign=report["double_sign"]))
    return {"session": s.describe(), "checks": checks,
            "passed": all(c["passed"] for c in checks)}
