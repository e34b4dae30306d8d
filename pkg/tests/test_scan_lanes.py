"""The compiled and pure-Python scan kernels must agree bit for bit."""

import random

import pytest

from heisencoh import _scan
from heisencoh._divisor_scan_py import MODULUS, scan_range as py_scan_range

pytestmark = pytest.mark.skipif(
    not _scan.compiled_available(), reason="compiled kernel not built"
)


def c_scan_range(*args):
    from heisencoh import _divisor_scan

    return _divisor_scan.scan_range(*args)


def test_kernels_agree_randomized():
    rnd = random.Random(7)
    for _ in range(25):
        t = rnd.getrandbits(192)
        lo = rnd.randint(1, 500)
        hi = lo + rnd.randint(1, 2000)
        keep = rnd.choice([1, 4, 64])
        w = rnd.getrandbits(rnd.randint(100, 191))
        stride = rnd.choice([0, 0, 1, 2, 7])
        r0 = (t * (lo - 1)) % MODULUS
        assert py_scan_range(t, r0, lo, hi, keep, w, stride) == c_scan_range(
            t, r0, lo, hi, keep, w, stride
        )


def test_kernels_agree_near_zero_residues():
    # t = M/8 exactly: residues cycle through 0 periodically
    t = MODULUS // 8
    out_py = py_scan_range(t, 0, 1, 64, 8, MODULUS >> 4, 0)
    out_c = c_scan_range(t, 0, 1, 64, 8, MODULUS >> 4, 0)
    assert out_py == out_c
    assert out_py[2] == [8, 16, 24, 32, 40, 48, 56]  # exact zeros

    # with stride 8 those zeros are excluded
    out_py = py_scan_range(t, 0, 1, 64, 8, MODULUS >> 4, 8)
    out_c = c_scan_range(t, 0, 1, 64, 8, MODULUS >> 4, 8)
    assert out_py == out_c
    assert out_py[2] == []


def test_kernel_continuation():
    rnd = random.Random(11)
    t = rnd.getrandbits(192)
    # one long range equals two stitched halves
    kept1, wit1, z1, r_mid = py_scan_range(t, 0, 1, 501, 64, 1 << 100, 0)
    kept2, wit2, z2, r_end = py_scan_range(t, r_mid, 501, 1001, 64, 1 << 100, 0)
    keptf, witf, zf, r_full = c_scan_range(t, 0, 1, 1001, 64, 1 << 100, 0)
    assert r_full == r_end
    merged = sorted(set(kept1) | set(kept2))[:64]
    assert merged == keptf
    assert wit1 + wit2 == witf
