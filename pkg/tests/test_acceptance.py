"""One test per acceptance criterion; the summary prints a pass/fail line for each."""

from __future__ import annotations

import os
import random
import subprocess
import sys
from functools import lru_cache

import pytest

from lieform.complexes import cohomology, relative_complex
from lieform.lie import Subalgebra
from lieform.models import algebra_data, compare_kernel, model_cohomology, pair_model
from lieform.obstruction import CONDITIONS, PairContext
from lieform.sullivan import check_model, random_model, spectral_sequence
from lieform.transgression import (kernel_of_rho_is_decomposable, primitives, rho_tau_identity,
                                   suspension_bijective)
from lieform.verify import VERIFIERS

from conftest import algebras, battery, pair_specs

PAIRS = sorted(pair_specs())
N_RANDOM = 60


@lru_cache(maxsize=None)
def random_instances():
    out = []
    for seed in range(N_RANDOM):
        rng = random.Random(1000 + seed)
        model = random_model(rng, max_gens=3, max_degree=7, cap=rng.randint(4, 12))
        out.append((seed, model, check_model(model), spectral_sequence(model)))
    return out


@pytest.mark.acceptance(1, "two-path cohomology agreement on every catalog pair")
def test_two_path_cohomology():
    for name in PAIRS:
        spec = pair_specs()[name]
        h = spec.subalgebra()
        cap = spec.g.dim - h.dim + 1
        rel = cohomology(relative_complex(spec.g, h, cap), cap)
        hm = model_cohomology(pair_model(spec.g, h), cap)
        assert [rel.dim(n) for n in range(cap + 1)] == [hm.dim(n) for n in range(cap + 1)], name


@pytest.mark.acceptance(2, "equivalence battery: the five conditions coincide")
def test_equivalence_battery():
    for name in PAIRS:
        rep = battery(name)
        values = {rep.conditions[c].value for c in CONDITIONS}
        assert len(values) == 1, (name, {c: rep.conditions[c].value for c in CONDITIONS})
        assert not rep.failures, (name, rep.failures)


@pytest.mark.acceptance(3, "rank identities for primitives and their -θ part")
def test_rank_identities():
    expected = {"sl2": (1, 0), "so1,1": (1, 1), "sl2+sl2": (2, 0), "sl3": (2, 1), "su2": (1, 0)}
    for name, (rank, minus) in expected.items():
        g = algebras()[name]
        ps = algebra_data(g).prims
        assert (ps.dim, len(ps.minus)) == (rank, minus), name
        assert ps.dim == g.rank
        fixed = Subalgebra(g, [{i: 1} for i in range(g.dim)]).fixed_part()
        rank_fixed = primitives(fixed.induced, check_rank=False).dim if fixed.dim else 0
        assert len(ps.minus) == g.rank - rank_fixed, name


@pytest.mark.acceptance(4, "rank criterion reproduced with a non-injectivity witness")
def test_rank_criterion():
    rep = battery("sl2/so1,1")
    v = rep.verdict
    assert (v.rank_lhs, v.rank_rhs, v.obstructed, v.reason) == (0, 1, True, "RANK_CRITERION")
    assert rep.conditions["vii"].value is False
    w = rep.conditions["i"].witness
    assert w["degree"] == 2
    assert w["cocycle"] == [{"monomial": [["e*", 1], ["f*", 1]], "coef": "1"}]
    assert w["primitive"] == [{"monomial": [["h*", 1]], "coef": "1"}]
    spec = pair_specs()["sl2/so1,1"]
    assert VERIFIERS["i"](PairContext(spec.name, spec.g, spec.subalgebra()), w)
    diag = battery("sl2+sl2/diag")
    assert diag.verdict.reason == "NONE_FOUND" and not diag.verdict.obstructed
    assert all(diag.conditions[c].value for c in CONDITIONS)


@pytest.mark.acceptance(5, "model identities on at least 50 randomized instances")
def test_model_identities():
    instances = random_instances()
    assert len(instances) >= 50
    for seed, model, checks, _ in instances:
        assert max(len(model.u), len(model.v), len(model.sw)) <= 3 and model.cap <= 12
        gens = model.big.generators
        assert all(gens[i].degree <= 7 for i in model.u + model.v)
        assert all(gens[i].degree <= 8 for i in model.sw)
        assert checks.all_ok(), (seed, checks)


@pytest.mark.acceptance(6, "spectral sequence convergence and edge factorization")
def test_spectral_convergence():
    for seed, _, _, ss in random_instances():
        assert ss.converges() and ss.edge_ok() and ss.e2_matches_formula(), seed
    for name in PAIRS:
        checks = battery(name).checks
        assert checks["spectral_convergence"] and checks["spectral_edge"], name


@pytest.mark.acceptance(7, "Cartan map facts for every catalog algebra")
def test_cartan_map_facts():
    for name, g in sorted(algebras().items()):
        td = algebra_data(g).td
        assert rho_tau_identity(td), name
        assert kernel_of_rho_is_decomposable(td, (g.dim + 1) // 2), name
        assert suspension_bijective(td, g.dim + 1), name


@pytest.mark.acceptance(8, "Chern–Weil kernel equals the restricted ideal")
def test_chern_weil_kernel():
    for name in PAIRS:
        spec = pair_specs()[name]
        h = spec.subalgebra()
        pm = pair_model(spec.g, h)
        top = max(spec.g.dim - h.dim + 1, 2 * (max(pm.h_data.prims.degrees, default=0) + 1))
        hm = model_cohomology(pm, top)
        for n in range(0, top + 1, 2):
            cmp = compare_kernel(pm, hm, n)
            assert cmp.kernel_in_ideal and cmp.ideal_in_kernel, (name, n)


def _catalog(tmp_path, tag, threads):
    env = dict(os.environ, LIEFORM_THREADS=str(threads))
    out = tmp_path / tag
    proc = subprocess.run([sys.executable, "-m", "lieform.cli", "catalog", "run", "--all", "-o", str(out)],
                          env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return (out / "report.json").read_bytes()


@pytest.mark.acceptance(9, "determinism across runs and thread counts")
def test_determinism(tmp_path):
    first = _catalog(tmp_path, "a", 1)
    assert first == _catalog(tmp_path, "b", 1)
    assert first == _catalog(tmp_path, "c", 8)
