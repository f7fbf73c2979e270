"""Per-model property suite: the checks behind ``gnc report`` and the acceptance gate.

Every check returns a small JSON-ready dict with a ``name`` and a ``passed``
flag. Nothing here depends on wall-clock time, so reports are reproducible.
"""

from __future__ import annotations

import math
import random
import warnings
from fractions import Fraction

from .cohomology import (
    GenericForm,
    InvariantDivisor,
    ProjectiveModel,
    classify_hypotheses,
    euler_characteristic,
    multidegree_cohomology,
    multiplication_verdict,
    pattern_closed_form,
    random_mixed_multidegree,
    sheaf_cohomology,
    sheaf_cohomology_by_enumeration,
    contributing_multidegrees,
)
from .complex_core import (
    GncModel,
    check_lcs_normalization_compat,
    lc_centers,
    lc_centers_B0_intersections,
    lcs,
    lcs_chain,
    sing,
    validate,
)
from .descent import descent_cohomology
from .ideals import IdealSequenceChecker
from .simplicial import (
    check_lc_center_surjectivity,
    check_level_adjunction,
    check_simplicial_identities,
    log_canonical_degree,
)


def projective(model: GncModel) -> ProjectiveModel:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return ProjectiveModel(model)


def check_structure(model: GncModel) -> dict:
    again = validate(model.ambient, model.facets, model.boundary, strip_unused=False)
    y = lcs(model)
    lcs_ok = y is None or (validate(y.ambient, y.facets, y.boundary, strip_unused=False) == y
                           and y.core == model.reduced_core)
    chain = lcs_chain(model)
    sizes = [m.facet_size for m in chain]
    chain_ok = len(chain) <= model.facet_size + 1 and all(a > b for a, b in zip(sizes, sizes[1:]))
    results = {
        "revalidates": again == model,
        "lcs_valid_with_reduced_core": lcs_ok,
        "lcs_chain_terminates": chain_ok,
        "sing_ignores_boundary": sing(model) == sing(model.with_boundary({})),
        "normalization_compatible": check_lcs_normalization_compat(model),
        "lc_centers_from_levels": check_lc_center_surjectivity(model, max(len(model.facets) - 1, 0)),
    }
    return {"name": "structure", "passed": all(results.values()), **results}


def check_lc_decomposition(model: GncModel) -> dict:
    y = lcs(model)
    expected = set(model.facets) | (lc_centers(y) if y is not None else set())
    decomposition = lc_centers(model) == expected
    oracle = True
    if not model.boundary:
        oracle = lc_centers(model) == lc_centers_B0_intersections(model)
    return {"name": "lc_decomposition", "passed": decomposition and oracle,
            "decomposition": decomposition, "intersection_oracle": oracle, "centers": len(lc_centers(model))}


def check_adjunction(model: GncModel, n_max: int = 3) -> dict:
    levels = [check_level_adjunction(model, n) for n in range(n_max + 1)]
    identities = check_simplicial_identities(model, n_max)
    return {"name": "adjunction", "passed": all(levels) and identities,
            "ell": str(log_canonical_degree(model)), "levels": levels, "simplicial_identities": identities}


def check_cohomology_oracles(pm: ProjectiveModel, d_range=range(0, 6), euler_range=range(-5, 6)) -> dict:
    mismatches = []
    for d in d_range:
        fine, oracle = sheaf_cohomology(pm, d), descent_cohomology(pm, d)
        if fine != oracle:
            mismatches.append({"d": d, "fine": list(fine), "descent": list(oracle)})
    euler_bad = []
    for d in euler_range:
        alt = sum((-1) ** q * h for q, h in enumerate(sheaf_cohomology(pm, d)))
        if alt != euler_characteristic(pm, d):
            euler_bad.append(d)
    return {"name": "cohomology_oracles", "passed": not mismatches and not euler_bad,
            "mismatches": mismatches, "euler_failures": euler_bad}


def check_grading(pm: ProjectiveModel, d_range=range(-6, 7), samples: int = 4, seed: int = 0) -> dict:
    """Closed forms on every contributing multidegree, enumeration vs grouped sums, and mixed-sign acyclicity."""
    rng = random.Random(f"grading/{seed}")
    closed_bad, sum_bad, mixed_bad = [], [], []
    for d in d_range:
        if sheaf_cohomology(pm, d) != sheaf_cohomology_by_enumeration(pm, d):
            sum_bad.append(d)
        seen = set()
        for a in contributing_multidegrees(pm, d):
            if a.pattern in seen:
                continue
            seen.add(a.pattern)
            if multidegree_cohomology(pm, a) != pattern_closed_form(pm, a.neg, a.pos):
                closed_bad.append(list(a.a))
        for _ in range(samples):
            a = random_mixed_multidegree(pm, d, rng)
            if a is not None and any(multidegree_cohomology(pm, a)):
                mixed_bad.append(list(a.a))
    return {"name": "grading", "passed": not (closed_bad or sum_bad or mixed_bad),
            "closed_form_failures": closed_bad, "enumeration_failures": sum_bad, "mixed_sign_failures": mixed_bad}


def vanishing_twists(ell: Fraction, width: int = 4) -> list[int]:
    """Integers ``d`` with ``ell < d <= ell + width``."""
    return list(range(math.floor(ell) + 1, math.floor(ell + width) + 1))


def check_vanishing_window(pm: ProjectiveModel, width: int = 4) -> dict:
    ell = log_canonical_degree(pm.base)
    failures = []
    for d in vanishing_twists(ell, width):
        dims = sheaf_cohomology(pm, d)
        if any(dims[1:]):
            failures.append({"d": d, "dims": list(dims)})
    return {"name": "vanishing", "passed": not failures, "ell": str(ell),
            "twists": vanishing_twists(ell, width), "failures": failures}


def _divisors(model: GncModel) -> list[InvariantDivisor]:
    n = model.ambient
    support = sorted(i for i, b in model.boundary.items() if b > 0)
    vectors = {(0,) * n}
    for i in support:
        vectors.add(tuple(1 if j == i else 0 for j in range(n)))
    if support:
        vectors.add(tuple(2 if j == support[0] else 0 for j in range(n)))
        vectors.add(tuple(1 if j in support else 0 for j in range(n)))
    return [InvariantDivisor(c) for c in sorted(vectors)]


def _tagged(verdicts: list[dict]) -> list[dict]:
    return [{"q": v["q"], "source_dim": v["source_dim"], "target_dim": v["target_dim"],
             "injective": v["injective"], "tag": "vacuous" if v["vacuous"] else "substantive"} for v in verdicts]


def check_injectivity(pm: ProjectiveModel, seed: int = 0, degrees=(1, 2), repeats: int = 3) -> dict:
    """Injectivity whenever the EV or TK hypotheses hold, over invariant divisors and generic forms."""
    model = pm.base
    ell = log_canonical_degree(model)
    twists = [d for d in range(math.ceil(ell), math.floor(ell) + 3)]
    instances, failures, disagreements = [], [], []
    if pm.dim < 0:
        return {"name": "injectivity", "passed": True, "instances": [], "failures": [], "disagreements": []}
    for d in twists:
        for c in _divisors(model):
            hyp = classify_hypotheses(pm, d, c)
            if not (hyp["EV"] or hyp["TK"]):
                continue
            verdicts = _tagged(multiplication_verdict(pm, d, c))
            record = {"d": d, "divisor": list(c.c), "trivial": c.degree == 0, "hypotheses": hyp, "verdicts": verdicts}
            instances.append(record)
            if not all(v["injective"] for v in verdicts):
                failures.append(record)
        for e in degrees:
            outcomes = []
            for s in range(seed, seed + repeats):
                form = GenericForm.random(pm, e, s)
                hyp = classify_hypotheses(pm, d, form)
                if not (hyp["EV"] or hyp["TK"]):
                    break
                verdicts = _tagged(multiplication_verdict(pm, d, form))
                record = {"d": d, "generic_degree": e, "seed": s, "hypotheses": hyp, "verdicts": verdicts}
                instances.append(record)
                outcomes.append([v["injective"] for v in verdicts])
                if not all(v["injective"] for v in verdicts):
                    failures.append(record)
            if outcomes and any(o != outcomes[0] for o in outcomes):
                disagreements.append({"d": d, "generic_degree": e})
    return {"name": "injectivity", "passed": not failures and not disagreements,
            "instances": instances, "failures": failures, "disagreements": disagreements}


def check_ideal_sequences(model: GncModel, max_members: int = 3, d_max: int = 4) -> dict:
    if lcs(model) is None:
        return {"name": "ideal_sequence", "passed": True, "skipped": "empty LCS locus", "unions": 0, "failures": []}
    checker = IdealSequenceChecker(model)
    unions = sum(math.comb(len(checker.centers), r) for r in range(1, max_members + 1))
    failures = checker.failures(max_members, d_max)
    return {"name": "ideal_sequence", "passed": not failures, "unions": unions, "failures": failures}


def run_suite(model: GncModel, seed: int = 0) -> dict:
    pm = projective(model)
    checks = [
        check_structure(model),
        check_lc_decomposition(model),
        check_adjunction(model),
        check_cohomology_oracles(pm),
        check_grading(pm, seed=seed),
        check_vanishing_window(pm),
        check_injectivity(pm, seed=seed),
        check_ideal_sequences(model),
    ]
    return {"checks": checks, "passed": all(c["passed"] for c in checks)}
