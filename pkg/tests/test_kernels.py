"""Backend dispatch: compiled and pure kernels must agree to the last touch."""

import math
import os
import random
import subprocess
import sys

import pytest

from permcount import backend
from permcount.errors import InvalidRangeError
from permcount.perms import count_pattern_brute, random_permutation
from permcount.trees import _flatten, parse_tree


@pytest.fixture(autouse=True)
def _restore_backend():
    before = backend.active_backend()
    yield
    backend.set_backend(before)


requires_compiled = pytest.mark.skipif(
    "compiled" not in backend.available_backends(),
    reason="compiled extension not built",
)


def test_available_backends_contains_python():
    assert "python" in backend.available_backends()
    assert backend.active_backend() in backend.available_backends()


def test_set_backend_rejects_unknown():
    with pytest.raises(InvalidRangeError):
        backend.set_backend("fortran")


@requires_compiled
def test_tree_kernel_parity():
    rng = random.Random(271828)
    for spec in ("R(NE)", "R(SE(NE))", "R(NE(NE,SW),SE)", "R(NE,NE,SE)"):
        labels, parents = _flatten(parse_tree(spec))
        for trial in range(8):
            pi = random_permutation(rng.randint(1, 200), rng)
            backend.set_backend("python")
            count_py, touches_py = backend.count_tree(labels, parents, pi)
            backend.set_backend("compiled")
            count_c, touches_c = backend.count_tree(labels, parents, pi)
            assert count_py == count_c
            assert touches_py == touches_c


@requires_compiled
def test_strip_kernel_parity():
    rng = random.Random(31415)
    for trial in range(6):
        n = rng.randint(4, 150)
        pi = random_permutation(n, rng)
        for m in (None, 1, 2, n):
            backend.set_backend("python")
            r1 = backend.count_3241(pi, m)
            r2 = backend.count_3214(pi, m)
            backend.set_backend("compiled")
            assert backend.count_3241(pi, m) == r1
            assert backend.count_3214(pi, m) == r2


def test_strip_counts_do_not_depend_on_m():
    rng = random.Random(999)
    for trial in range(5):
        n = rng.randint(4, 80)
        pi = random_permutation(n, rng)
        expect_3241 = count_pattern_brute((3, 2, 4, 1), pi)
        expect_3214 = count_pattern_brute((3, 2, 1, 4), pi)
        for m in (1, 2, 3, None, n):
            assert backend.count_3241(pi, m)[0] == expect_3241
            assert backend.count_3214(pi, m)[0] == expect_3214


def test_strip_width_validation():
    with pytest.raises(InvalidRangeError):
        backend.count_3241((2, 1, 4, 3), 0)
    with pytest.raises(InvalidRangeError):
        backend.count_3214((2, 1, 4, 3), -3)


def test_tiny_inputs():
    for pi in ((), (1,), (2, 1), (2, 3, 1)):
        assert backend.count_3241(pi, None)[0] == 0
        assert backend.count_3214(pi, None)[0] == 0


@requires_compiled
def test_wide_counts_route_around_int128():
    # 30 chained vertices on n = 70 could need 30 * 7 = 210 bits, past what
    # the compiled accumulator holds; the dispatcher must hand the call to
    # the pure twin, whose integers never overflow
    backend.set_backend("compiled")
    spec = "R" + "(NE" * 29 + ")" * 29
    labels, parents = _flatten(parse_tree(spec))
    identity = tuple(range(1, 71))
    count, _ = backend.count_tree(labels, parents, identity)
    assert count == math.comb(70, 30)
    assert count > 2**63  # would have wrapped in a 64-bit accumulator


def test_backend_env_var_selects_python():
    env = dict(os.environ, PERMCOUNT_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", "from permcount import backend; print(backend.active_backend())"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert out.returncode == 0
    assert out.stdout.strip() == "python"


def test_backend_env_var_rejects_unknown():
    env = dict(os.environ, PERMCOUNT_BACKEND="cuda")
    out = subprocess.run(
        [sys.executable, "-c", "import permcount.backend"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert out.returncode != 0
    assert "cuda" in out.stderr
