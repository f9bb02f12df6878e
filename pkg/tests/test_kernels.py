"""The compiled and pure-Python adjacency kernels must agree exactly."""

import random

import pytest

from qnormal.enumeration import _kernel_py, _select_kernel, available_kernels

pytestmark = pytest.mark.skipif(
    "cython" not in available_kernels(), reason="compiled kernel not built"
)


def random_case(rng, n_bits, n_masks):
    masks = sorted({rng.getrandbits(n_bits) | 1 << rng.randrange(n_bits) for _ in range(n_masks)})
    idx = list(range(len(masks)))
    rng.shuffle(idx)
    half = len(idx) // 3
    groups = [(3 * g, 3 * g + 1, 3 * g + 2) for g in range(n_bits // 3)]
    return masks, idx[:half], idx[half : 2 * half], groups


@pytest.mark.parametrize("n_bits", [9, 35, 64, 70, 130])
@pytest.mark.parametrize("use_filter", [False, True])
def test_parity_on_random_masks(n_bits, use_filter):
    compiled = _select_kernel("cython")
    rng = random.Random(n_bits)
    for _ in range(20):
        masks, pos, neg, groups = random_case(rng, n_bits, 40)
        for max_card in (n_bits // 3, n_bits):
            args = (masks, pos, neg, max_card, groups, use_filter)
            assert compiled(*args) == _kernel_py.adjacent_pairs(*args)


def test_empty_inputs():
    compiled = _select_kernel("cython")
    assert compiled([], [], [], 3, [], True) == []
    assert compiled([1, 2], [0], [], 3, [], True) == []


def test_unknown_kernel():
    with pytest.raises(ValueError):
        _select_kernel("fortran")
