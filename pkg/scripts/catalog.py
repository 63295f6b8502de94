"""Enumerate small algebras, profile them and tally implication-audit violations.

    python3 scripts/catalog.py --max-size 6 --out catalog.json
"""
from __future__ import annotations

import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass

from lexpea import enumerate_peas, implication_audit, is_commutative
from lexpea.pea import dumps_pea


@dataclass
class CatalogConfig:
    max_size: int = 5
    out: str | None = None


def run(cfg: CatalogConfig) -> dict:
    t0 = time.perf_counter()
    rows, counts, violations = [], Counter(), Counter()
    for E in enumerate_peas(cfg.max_size):
        rep = implication_audit(E)
        counts[E.n] += 1
        for v in rep.violations:
            violations[(E.n, v)] += 1
        rows.append({
            "name": E.name,
            "size": E.n,
            "commutative": bool(is_commutative(E)),
            "profile": dict(rep.profile),
            "violations": rep.violations,
            "table": dumps_pea(E),
        })
    return {
        "config": asdict(cfg),
        "counts": dict(sorted(counts.items())),
        "violations": {f"size {n}: {v}": k for (n, v), k in sorted(violations.items())},
        "seconds": round(time.perf_counter() - t0, 3),
        "algebras": rows,
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-size", type=int, default=CatalogConfig.max_size)
    ap.add_argument("--out")
    cfg = CatalogConfig(**{k.replace("-", "_"): v for k, v in vars(ap.parse_args()).items()})
    res = run(cfg)
    print("counts:", res["counts"])
    for k, v in res["violations"].items():
        print(f"  {k} x{v}")
    print(f"{len(res['algebras'])} algebras in {res['seconds']}s")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(res, fh, indent=2)


if __name__ == "__main__":
    main()
