"""Cross-checks between the jitted kernels and their numpy fallbacks."""

import os
import subprocess
import sys

import numpy as np

from srskit import _kernels


def test_pick_distinct_argmax_backends_agree():
    rng = np.random.default_rng(0)
    for _ in range(50):
        n2 = int(rng.integers(1, 40))
        n = int(rng.integers(1, n2 + 1))
        absq = np.abs(rng.standard_normal((n, n2)))
        a = _kernels.pick_distinct_argmax_numpy(absq)
        b = _kernels.pick_distinct_argmax_numba(absq)
        assert (a == b).all()


def test_pick_distinct_argmax_tie_lowest_index():
    absq = np.array([[1.0, 1.0, 1.0], [1.0, 1.0, 1.0]])
    for pick in (_kernels.pick_distinct_argmax_numpy,
                 _kernels.pick_distinct_argmax_numba):
        assert list(pick(absq)) == [0, 1]


def test_pick_distinct_argmax_exclusion():
    # one dominant column; later rows must fall back to the runner-up
    absq = np.array([[9.0, 1.0, 2.0], [9.0, 1.0, 2.0], [9.0, 1.0, 2.0]])
    for pick in (_kernels.pick_distinct_argmax_numpy,
                 _kernels.pick_distinct_argmax_numba):
        assert list(pick(absq)) == [0, 2, 1]


def test_lloyd_backends_agree():
    rng = np.random.default_rng(1)
    # two well-separated blobs
    pts = np.vstack([
        rng.standard_normal((40, 3)) * 0.1 + 5.0,
        rng.standard_normal((60, 3)) * 0.1 - 5.0,
    ])
    init = pts[[0, 50]].copy()
    c_np, l_np, i_np, _ = _kernels.lloyd_numpy(pts, init, 50)
    c_nb, l_nb, i_nb, _ = _kernels.lloyd_numba(pts, init, 50)
    assert np.allclose(c_np, c_nb, atol=1e-10)
    assert (l_np == l_nb).all()
    assert abs(i_np - i_nb) < 1e-8 * (1.0 + abs(i_np))


def test_lloyd_k1_fixed_point():
    rng = np.random.default_rng(2)
    pts = rng.standard_normal((30, 4))
    centers, labels, inertia, _ = _kernels.lloyd_numpy(pts, pts[:1].copy(), 50)
    assert np.allclose(centers[0], pts.mean(axis=0), atol=1e-12)
    assert (labels == 0).all()
    assert inertia > 0


def test_lloyd_empty_cluster_keeps_center():
    pts = np.array([[0.0, 0.0], [0.1, 0.0], [0.2, 0.0]])
    init = np.array([[0.1, 0.0], [50.0, 50.0]])
    centers, labels, _, _ = _kernels.lloyd_numpy(pts, init, 10)
    assert (labels == 0).all()
    assert np.allclose(centers[1], [50.0, 50.0])


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, SRSKIT_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "import srskit; print(srskit.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_default_backend_is_numba_when_available():
    if _kernels.NUMBA_AVAILABLE and not _kernels.NUMBA_DISABLED:
        assert _kernels.BACKEND == "numba"
    else:
        assert _kernels.BACKEND == "numpy"
