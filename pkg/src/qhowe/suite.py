"""The acceptance grid as named sections, shared by ``suite-all`` and the test suite."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable

from . import dynweyl, fock, howe, rmatrix, yangian
from .report import Report

__all__ = ["Section", "SECTIONS", "run_section", "run_suite_all", "RNG_NAME"]

RNG_NAME = "python random.Random (MT19937), one stream per check seeded from the run seed"


@dataclass(frozen=True)
class Section:
    key: str
    title: str
    limit_s: float
    run: Callable[[Report, int, bool, int], None]


def _pairs(N):
    return product(range(N + 1), repeat=2)


def _hayashi(rep, seed, quick, points):
    for N in (2, 3) if quick else (2, 3, 4):
        rep.extend(fock.verify_hayashi_relations(N), f"N={N}")


def _howe(rep, seed, quick, points):
    for N, M in ((2, 2), (3, 2), (2, 3), (3, 3)):
        rep.extend(howe.verify_howe_commutation(N, M), f"(N,M)=({N},{M})")


def _decomposition(rep, seed, quick, points):
    for N, M in product((1, 2, 3), repeat=2):
        howe.decompose_multiplicities(N, M, rep)


def _oracle(rep, seed, quick, points):
    for N in range(1, 4 if quick else 5):
        rmatrix.oracle_equivalence(N, report=rep)


def _rmatrix(rep, seed, quick, points):
    for N in (1, 2, 3):
        for k, kp in _pairs(N):
            rmatrix.pole_check(k, kp, N, rep)
            rmatrix.verify_intertwiner(k, kp, N, points, seed, rep)
            rmatrix.verify_inversion(k, kp, N, points, seed, rep)
        for ks in product(range(N + 1), repeat=3):
            rmatrix.verify_ybe(*ks, N, points, seed, rep)
    if not quick:
        rmatrix.verify_ybe(1, 2, 1, 4, points, seed, rep)
        rmatrix.verify_ybe(2, 2, 2, 4, points, seed, rep)


def _theorem2(rep, seed, quick, points):
    N = 2 if quick else 3
    for M in (2, 3):
        for mu in product(range(N + 1), repeat=M):
            dynweyl.verify_theorem2(M, N, mu, points, seed, report=rep)
    if not quick:
        for mu in ((1, 0, 1, 0), (1, 1, 1, 1), (2, 1, 1, 0)):
            dynweyl.verify_theorem2(4, 2, mu, points, seed, relations=("i",), report=rep)


def _appendix(rep, seed, quick, points):
    dynweyl.appendix_suite(6, rep)
    dynweyl.ev_compare(6, 3, rep)


def _bridge(rep, seed, quick, points):
    for N in range(1, 4 if quick else 5):
        for k, kp in _pairs(N):
            dynweyl.howe_bridge(k, kp, N, rep)


def _yangian(rep, seed, quick, points):
    for N in (1, 2, 3):
        yangian.verify_classical_sl2(N, rep)
        for k, kp in _pairs(N):
            yangian.verify_rational_invariance(k, kp, N, points, seed, rep)
            yangian.limit_check(k, kp, N, report=rep)
        triples = [(1, 1, 1)] if quick and N == 3 else product(range(N + 1), repeat=3)
        for ks in triples:
            yangian.verify_rational_ybe(*ks, N, points, seed, rep)
    yangian.limit_digits_check(1, 1, 2, report=rep)


SECTIONS = [
    Section("hayashi", "Hayashi relations on the Fock space, N in {2,3,4}", 10, _hayashi),
    Section("howe", "Howe commutation and sl2 relations of the pair operators", 30, _howe),
    Section("decomposition", "multiplicity-one joint spectrum, total dimension 2^(NM)", 60, _decomposition),
    Section("oracle-equivalence", "braiding equals the fusion-projector oracle, k,k' <= N <= 4", 300, _oracle),
    Section("rmatrix", "intertwiner, braid relation and inversion at seeded points", 600, _rmatrix),
    Section("theorem2", "dynamical braid relations (i)/(ii)/(iii)", 600, _theorem2),
    Section("appendix", "closed forms on L_l and the B-operator comparison", 60, _appendix),
    Section("howe-bridge", "A_1 on (k,k') equals (-1)^min(k,k') times the braiding", 300, _bridge),
    Section("yangian", "rational limit: additive braid relation, invariance, O(eps) convergence", 120, _yangian),
]


def run_section(section: Section, seed: int = 0, quick: bool = False, points: int = 20) -> Report:
    rep = Report(section.key, config={"seed": seed, "quick": quick, "points": points, "rng": RNG_NAME})
    with rep.timed("total"):
        section.run(rep, seed, quick, points)
    return rep


def run_suite_all(seed: int = 0, quick: bool = False, points: int = 20, only=None) -> Report:
    """Every section in order; the combined report prefixes checks with the section key."""
    out = Report("suite-all", config={"seed": seed, "quick": quick, "points": points, "rng": RNG_NAME})
    for sec in SECTIONS:
        if only and sec.key not in only:
            continue
        rep = run_section(sec, seed, quick, points)
        out.extend(rep, sec.key)
        out.config.setdefault("sections", []).append(
            {"key": sec.key, "passed": rep.passed, "checks": len(rep.checks)})
    return out
