import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from geolrc.config import build_from_config, builtin_config
from geolrc.estimator import LRCEncoder, check_symbols


def test_params_and_clone():
    enc = LRCEncoder("ex3_1", t=3)
    params = enc.get_params()
    assert params["config"] == "ex3_1" and params["t"] == 3
    twin = clone(enc).set_params(t=4)
    assert twin.t == 4 and enc.t == 3


def test_round_trip(rng):
    enc = LRCEncoder("ex3_1", t=3).fit()
    assert enc.n_features_in_ == enc.code_.k == 6
    msgs = rng.integers(0, 64, size=(20, 6))
    words = enc.transform(msgs)
    assert words.shape == (20, 78)
    assert np.array_equal(enc.inverse_transform(words), msgs)
    damaged = words.copy()
    for s in enc.code_.partitions[0].sets:
        damaged[:, s[1]] = -1
    assert np.array_equal(enc.predict(damaged), words)
    assert enc.score(damaged, words) == 1.0


def test_fit_transform_on_surface(rng):
    enc = LRCEncoder("ex7_1")
    msgs = rng.integers(0, 4, size=(5, 6))
    assert enc.fit_transform(msgs).shape == (5, 9)


def test_accepts_built_code_and_parsed_config():
    code = build_from_config(builtin_config("ex7_1"))
    assert LRCEncoder(code).fit().code_ is code
    assert LRCEncoder(builtin_config("ex7_1")).fit().code_.n == 9


def test_validation():
    enc = LRCEncoder("ex7_1").fit()
    with pytest.raises(ValueError):
        enc.transform(np.zeros((2, 5), dtype=int))
    with pytest.raises(ValueError):
        enc.transform(np.full((1, 6), 4))
    with pytest.raises(ValueError):
        enc.transform([[0.5] * 6])
    with pytest.raises(ValueError):
        enc.inverse_transform(np.eye(1, 9, dtype=int))  # weight 1 < d
    with pytest.raises(NotFittedError):
        LRCEncoder("ex7_1").transform([[0] * 6])
    with pytest.raises(ValueError):
        LRCEncoder().fit()
    assert check_symbols([[0, -1, 3]], 4, 3, allow_erasures=True).dtype == np.int64


def test_report():
    rep = LRCEncoder("ex7_1").fit().report()
    assert rep.d_exact == 2
