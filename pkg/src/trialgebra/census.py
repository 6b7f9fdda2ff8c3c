"""Census of random orthogonal isotopes H0_{f,g} of the session Hurwitz algebra.

Each sample draws f, g as products of 0..8 random reflections from its own
seed (spawned from the session seed), so any sample can be recomputed on its
own and shards can be split by index without changing results.
"""

from __future__ import annotations

import csv
import io
from collections import Counter

from .compalg import isotope, is_symmetric, pushforward
from .functor import double_sign, double_sign_via_orders, iso_search, symmetric_criterion
from .session import Session
from .simgroup import random_isometry

CLASSES = ["+1,+1", "+1,-1", "-1,+1", "-1,-1"]


def _key(pair) -> str:
    return ",".join("+1" if s > 0 else "-1" for s in pair)


def sample(session: Session, index: int, iso_budget: int | None):
    fld, q = session.field, session.form
    rng = session.rng(1, index)
    f = random_isometry(q, int(rng.integers(0, 9)), rng)
    g = random_isometry(q, int(rng.integers(0, 9)), rng)
    c = isotope(session.h0, f.mat, g.mat)
    direct = double_sign(c, rng=rng).pair
    via_orders = double_sign_via_orders(session, c).pair
    assert direct == via_orders, f"double-sign routes disagree on sample {index}"
    assert direct == (g.sign, f.sign)
    sym = is_symmetric(c)
    # H0_{f,g} = S0_{i0 f, i0 g}
    crit = symmetric_criterion(session, session.s0, fld.matmul(session.i0, f.mat),
                               fld.matmul(session.i0, g.mat))
    assert sym == crit, f"symmetric routes disagree on sample {index}"
    row = {"index": index, "double_sign": _key(direct), "symmetric": sym,
           "iso_search": "", "iso_cost": ""}
    if iso_budget is not None:
        h = random_isometry(q, 2 * int(rng.integers(1, 5)), rng).mat
        verdict = iso_search(session, c, pushforward(c, h), budget=iso_budget, seed=index)
        row["iso_search"] = verdict.status
        row["iso_cost"] = verdict.cost
    return row


def run_census(session: Session, samples: int, iso_samples: int = 10, iso_budget: int = 500) -> dict:
    if not hasattr(session.field, "p"):
        raise ValueError("census runs over finite fields")
    rows = [sample(session, i, iso_budget if i < iso_samples else None) for i in range(samples)]
    counts = Counter(r["double_sign"] for r in rows)
    iso_counts = Counter(r["iso_search"] for r in rows if r["iso_search"])
    return {
        "session": session.describe(),
        "samples": samples,
        "double_sign": {k: counts.get(k, 0) for k in CLASSES},
        "symmetric": sum(r["symmetric"] for r in rows),
        "iso_search": {"attempted": sum(iso_counts.values()),
                       "found": iso_counts.get("yes", 0),
                       "unknown": iso_counts.get("unknown", 0),
                       "total_cost": sum(r["iso_cost"] for r in rows if r["iso_search"])},
        "rows": rows,
    }


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    fields = ["index", "double_sign", "symmetric", "iso_search", "iso_cost"]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in report["rows"]:
        writer.writerow(row)
    return buf.getvalue()
