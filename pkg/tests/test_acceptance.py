"""Acceptance gate: one criterion per test, one PASS/FAIL line each.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or as a script.
Every check is exact except the limit criterion, which uses 60-digit floats.
"""

import json
import sys
import time

import pytest

from qhowe.cli import main
from qhowe.suite import SECTIONS, run_section

SEED = 0
BY_KEY = {s.key: s for s in SECTIONS}

CRITERIA = [
    (1, "hayashi", "Hayashi relations exact on the Fock space, N in {2,3,4}"),
    (2, "howe", "Howe commutation and sl2 pair relations, (N,M) in {(2,2),(3,2),(2,3),(3,3)}"),
    (3, "decomposition", "multiplicity-one joint spectrum, total dimension 2^(NM), N,M <= 3"),
    (4, "oracle-equivalence", "braiding equals fusion-projector oracle entrywise, k,k' <= N <= 4"),
    (5, "rmatrix", "intertwiner, braid relation, inversion at 20 seeded points, N <= 3 plus N=4 spots"),
    (6, "theorem2", "dynamical relations (i)/(ii)/(iii) at 20 points, M <= 3 all mu, M=4 spots"),
    (7, "appendix", "closed forms, Casimir, Cartan involution, B-series and EV comparison, l <= 6"),
    (8, "howe-bridge", "A_1 on (k,k') equals (-1)^min(k,k') times the braiding, N <= 4"),
    (9, "yangian", "rational limit: additive braid relation, invariance, eps-linear distances, 60 digits"),
]


LINES = []


def _line(n, title, ok, detail):
    text = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})"
    LINES.append(text)
    print(text)


@pytest.mark.parametrize("n,key,title", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(n, key, title):
    sec = BY_KEY[key]
    t0 = time.perf_counter()
    rep = run_section(sec, seed=SEED)
    elapsed = time.perf_counter() - t0
    fails = rep.failures()
    ok = not fails and elapsed < sec.limit_s and len(rep.checks) > 0
    detail = f"{len(rep.checks)} checks, {elapsed:.1f}s of {sec.limit_s:.0f}s"
    if fails:
        detail += f", first failure: {fails[0].name}"
    _line(n, title, ok, detail)
    assert not fails, rep.render()
    assert elapsed < sec.limit_s


def test_criterion_10_determinism(tmp_path):
    t0 = time.perf_counter()
    runs = []
    for name in ("first", "second"):
        code = main(["suite-all", "--seed", "3", "-o", str(tmp_path / name)])
        runs.append((code, (tmp_path / name / "suite-all_seed3.json").read_bytes()))
    identical = runs[0][1] == runs[1][1]
    ok = identical and all(code == 0 for code, _ in runs)
    data = json.loads(runs[0][1])
    _line(10, "suite-all twice with a fixed seed gives byte-identical JSON (timing excluded)", ok,
          f"{len(data['checks'])} checks, {time.perf_counter() - t0:.1f}s")
    assert "timing" not in data
    assert identical
    assert all(code == 0 for code, _ in runs)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
