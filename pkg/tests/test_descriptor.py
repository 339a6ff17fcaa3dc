from __future__ import annotations

import json

import numpy as np
import pytest

from ratlength import descriptor
from ratlength.core import BlaschkeProduct, PartialFraction, PoleBasis, PolyRatio, TaylorPoly
from ratlength.errors import MalformedFunction

Z = np.array([0.3 + 0.2j, -0.5j, 0.7])


@pytest.mark.parametrize(
    "fn",
    [
        PoleBasis(0.1, [0.2, 0.5j], [1.0, 0.3 - 0.1j]),
        PolyRatio([1.0, 2.0j], [3.0, -1.0]),
        TaylorPoly([0, 1, 0.25j]),
        BlaschkeProduct([0.1, -0.4j]),
        PartialFraction(0.0, [1.5, -1.5j], [[1.0, 0.5], [0.2j, 0.0]]),
    ],
)
def test_round_trip(fn, tmp_path):
    path = tmp_path / "fn.json"
    descriptor.dump(fn, path)
    back = descriptor.load(path)
    assert back.form == fn.form
    np.testing.assert_array_equal(back(Z), fn(Z))


def test_unknown_kind():
    with pytest.raises(MalformedFunction):
        descriptor.from_dict({"kind": "mystery"})


def test_bad_complex():
    with pytest.raises(MalformedFunction):
        descriptor.decode_complex([1, 2, 3])
    assert descriptor.decode_complex(2) == 2 + 0j


def test_load_coefficients(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps([[1, 0], [2, 0], [0, 3]]))
    np.testing.assert_array_equal(descriptor.load_coefficients(p), [1, 2, 3j])
    p.write_text(json.dumps({"kind": "koebe"}))
    np.testing.assert_array_equal(descriptor.load_coefficients(p, 4), [1, 2, 3, 4])
    with pytest.raises(MalformedFunction):
        descriptor.load_coefficients(p)
    p.write_text(json.dumps({"kind": "poly_ratio", "numerator": [0, 1], "denominator": [1, -0.5]}))
    np.testing.assert_allclose(descriptor.load_coefficients(p, 3), [1, 0.5, 0.25])
