import json
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from laurentcc import _kernels_py, kernels
from laurentcc.parsing import parse_ring

compiled = pytest.importorskip("laurentcc._kernels")

RINGS = ["Q", "Q[e;2]", "Z/8", "Z/4[e;2,f;2]", "Q[e1;2,e2;3]"]


def random_vec(ring, draw):
    if ring.mod:
        return tuple(draw(st.integers(0, ring.mod - 1)) for _ in range(ring.K))
    return tuple(ring.base_scalar(draw(st.fractions(max_denominator=9).filter(
        lambda x: abs(x) < 50))) for _ in range(ring.K))


@st.composite
def ring_and_series(draw):
    ring = parse_ring(draw(st.sampled_from(RINGS)))
    la, lb = draw(st.integers(0, 6)), draw(st.integers(0, 6))
    A = [random_vec(ring, draw) for _ in range(la)]
    B = [random_vec(ring, draw) for _ in range(lb)]
    return ring, A, B, draw(st.integers(0, 10))


def test_compiled_backend_selected():
    if not os.environ.get("LAURENTCC_PURE_PYTHON"):
        assert kernels.BACKEND == "cython"


@settings(max_examples=80, deadline=None)
@given(ring_and_series())
def test_series_mul_backends_agree(case):
    ring, A, B, n = case
    args = (A, B, ring.table, ring.K, ring.mod, n)
    assert compiled.series_mul(*args) == _kernels_py.series_mul(*args)


@settings(max_examples=80, deadline=None)
@given(ring_and_series())
def test_vec_mul_backends_agree(case):
    ring, A, B, _ = case
    if A and B:
        a, b = A[0], B[0]
        assert compiled.vec_mul(a, b, ring.table, ring.mod) == \
            _kernels_py.vec_mul(a, b, ring.table, ring.mod)


def test_series_mul_against_schoolbook():
    ring = parse_ring("Z/8[e;2]")
    A = [(1, 2), (3, 0), (0, 5)]
    B = [(7, 1), (2, 2)]
    # (a0 + a1 e)(b0 + b1 e) = a0 b0 + (a0 b1 + a1 b0) e
    expected = [(7, 1 + 14), (2 + 21, 2 + 4 + 3), (6, 3 * 2 + 5 * 7), (0, 10)]
    expected = [tuple(v % 8 for v in row) for row in expected]
    got = _kernels_py.series_mul(A, B, ring.table, ring.K, ring.mod, 4)
    assert got == expected
    assert compiled.series_mul(A, B, ring.table, ring.K, ring.mod, 4) == expected


def test_pure_python_fallback_in_subprocess():
    code = (
        "import json\n"
        "from laurentcc import BACKEND\n"
        "from laurentcc.acceptance import worked_example_values\n"
        "values, _ = worked_example_values()\n"
        "print(json.dumps({'backend': BACKEND,"
        " 'values': {k: sorted(v) for k, v in values.items()}}))\n"
    )
    env = dict(os.environ, LAURENTCC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True, timeout=300)
    data = json.loads(out.stdout)
    assert data["backend"] == "python"
    assert data["values"] == {"B(f,g)": ["1 + 4*e"], "B(g,f)": ["1 - 8*e"],
                              "D(f,g)": ["1"], "D(g,f)": ["1 - e"]}
