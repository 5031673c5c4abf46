"""Backend agreement: the numba kernels and their numpy/python fallbacks
apply floating-point updates in the same order, so outputs match exactly."""

import os
import subprocess
import sys

import numpy as np
import pytest

import seedclust._kernels as kernels
from seedclust import SparseMass
from seedclust.datasets import random_connected_graph

pytestmark = pytest.mark.skipif(
    not kernels.HAVE_NUMBA, reason="numba backend unavailable; twins are identical"
)


@pytest.fixture(scope="module")
def graph():
    return random_connected_graph(80, 160, rng_seed=4)


def test_diffuse_push_backends_agree(graph):
    g = graph
    scratch = np.zeros(g.vertex_count)
    marker = np.zeros(g.vertex_count, dtype=bool)
    mass = SparseMass.from_seed(g, 0)
    support, masses = mass.vertices, mass.masses
    for _ in range(12):
        s1, m1 = kernels.diffuse_push_numba(
            g.indptr, g.indices, g.degrees, support, masses, scratch, marker
        )
        s2, m2 = kernels.diffuse_push_numpy(
            g.indptr, g.indices, g.degrees, support, masses, scratch, marker
        )
        assert np.array_equal(s1, s2)
        assert np.array_equal(m1, m2)
        support, masses = s1, m1
    assert np.all(scratch == 0.0)
    assert not marker.any()


def test_sweep_cutvol_backends_agree(graph):
    g = graph
    rng = np.random.default_rng(0)
    order = rng.permutation(g.vertex_count).astype(np.int64)
    in_set = np.zeros(g.vertex_count, dtype=bool)
    c1, v1 = kernels.sweep_cutvol_numba(g.indptr, g.indices, g.degrees, order, in_set)
    c2, v2 = kernels.sweep_cutvol_numpy(g.indptr, g.indices, g.degrees, order, in_set)
    assert np.array_equal(c1, c2)
    assert np.array_equal(v1, v2)
    assert not in_set.any()


def test_walk_phase_backends_agree(graph):
    g = graph
    uniforms = np.random.default_rng(9).random(20000)
    results = []
    for fn in (kernels.walk_phase_numba, kernels.walk_phase_numpy):
        log_e = np.log(1.0 / g.degrees.astype(np.float64))
        visits = np.zeros(g.vertex_count, dtype=np.int64)
        cur = fn(g.indptr, g.indices, log_e, visits, 0, np.log(1.3), uniforms)
        results.append((cur, log_e.copy(), visits.copy()))
    (c1, e1, v1), (c2, e2, v2) = results
    assert c1 == c2
    assert np.array_equal(e1, e2)
    assert np.array_equal(v1, v2)


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, SEEDCLUST_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "import seedclust; print(seedclust.BACKEND)"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_fallback_run_matches_jit_run(tmp_path, karate):
    """End to end: a diffusion driven by either backend lands on the same mass."""
    script = (
        "import numpy as np\n"
        "from seedclust import DiffusionConfig, run_diffusion\n"
        "from seedclust.datasets import karate_club\n"
        "g = karate_club()\n"
        "mass, tel = run_diffusion(g, 33, DiffusionConfig(alpha=1e-3))\n"
        "np.save(OUT, mass.to_dense(g.vertex_count))\n"
    )
    outputs = []
    for flag in ("0", "1"):
        out_file = tmp_path / f"mass_{flag}.npy"
        env = dict(os.environ, SEEDCLUST_NO_NUMBA=flag)
        subprocess.run(
            [sys.executable, "-c", script.replace("OUT", repr(str(out_file)))],
            check=True,
            env=env,
        )
        outputs.append(np.load(out_file))
    assert np.array_equal(outputs[0], outputs[1])
