"""Canonical serialization: byte-identical round trips and digest binding."""

import json
import random
from fractions import Fraction

import pytest

from conftest import DHSS_SEED
from crthss import OwfFamily, dhss_deal, generate_compact_sequence
from crthss.fileformat import (
    bundle_file_obj,
    canonical_dumps,
    param_file_obj,
    params_digest,
    parse_bundle_file,
    parse_param_file,
    parse_share_file,
    share_file_obj,
)
from crthss.params import Hierarchy, SchemeParams


def random_params(rng):
    m0 = rng.choice([97, 997, 1009])
    sizes = tuple(rng.randrange(1, 3) for _ in range(rng.randrange(1, 4)))
    thresholds = []
    previous = 0
    cumulative = 0
    for size in sizes:
        cumulative += size
        lo = previous + 1
        if lo > cumulative:
            return None
        thresholds.append(rng.randrange(lo, cumulative + 1))
        previous = thresholds[-1]
    hier = Hierarchy(sizes, tuple(thresholds))
    seq = generate_compact_sequence(m0, hier.n, 1, Fraction(2, 3), rng.randrange(2**32))
    kind = rng.choice(["test_affine", "hash_based"])
    owf = OwfFamily(
        kind=kind,
        family_tag=bytes(rng.randrange(256) for _ in range(rng.randrange(0, 5))),
    )
    return SchemeParams(sequence=seq, hierarchy=hier, owf=owf)


def test_param_round_trip(micro_params):
    obj = param_file_obj("dhss", micro_params)
    text = canonical_dumps(obj)
    scheme, parsed = parse_param_file(json.loads(text))
    assert scheme == "dhss"
    assert parsed == micro_params
    assert canonical_dumps(param_file_obj(scheme, parsed)) == text


def test_param_round_trip_many():
    rng = random.Random(70)
    done = 0
    while done < 25:
        params = random_params(rng)
        if params is None:
            continue
        scheme = rng.choice(["dhss", "chss", "ab"])
        text = canonical_dumps(param_file_obj(scheme, params))
        back_scheme, back = parse_param_file(json.loads(text))
        assert (back_scheme, back) == (scheme, params)
        assert canonical_dumps(param_file_obj(back_scheme, back)) == text
        done += 1


def test_share_and_bundle_round_trip(micro_params):
    result = dhss_deal(4, micro_params, DHSS_SEED)
    digest = params_digest("dhss", micro_params)
    for share in result.shares:
        obj = share_file_obj("dhss", share, digest)
        text = canonical_dumps(obj)
        scheme, back, back_digest = parse_share_file(json.loads(text))
        assert (scheme, back, back_digest) == ("dhss", share, digest)
        assert canonical_dumps(share_file_obj(scheme, back, back_digest)) == text

    bundle_text = canonical_dumps(bundle_file_obj("dhss", result.public))
    scheme, bundle = parse_bundle_file(json.loads(bundle_text))
    assert scheme == "dhss"
    assert bundle.params == micro_params
    assert dict(bundle.w) == dict(result.public.w)
    assert canonical_dumps(bundle_file_obj(scheme, bundle)) == bundle_text


def test_digest_binds_parameters(micro_params):
    digest = params_digest("dhss", micro_params)
    assert digest == params_digest("dhss", micro_params)
    assert digest != params_digest("chss", micro_params)
    other = SchemeParams(
        sequence=micro_params.sequence,
        hierarchy=Hierarchy((3,), (2,)),
        owf=micro_params.owf,
    )
    assert digest != params_digest("dhss", other)


def test_integers_travel_as_strings(micro_params):
    obj = param_file_obj("dhss", micro_params)
    assert obj["sequence"]["m0"] == "7"
    assert obj["sequence"]["moduli"] == ["11", "13", "17"]
    assert obj["sequence"]["theta"] == "1/2"
    result = dhss_deal(4, micro_params, DHSS_SEED)
    share_obj = share_file_obj("dhss", result.shares[0], "x")
    assert isinstance(share_obj["value"], str)
    assert isinstance(share_obj["modulus"], str)
    bundle_obj = bundle_file_obj("dhss", result.public)
    assert all(isinstance(e["value"], str) for e in bundle_obj["w"])


def test_parse_rejects_malformed(micro_params):
    good = param_file_obj("dhss", micro_params)
    with pytest.raises(ValueError):
        parse_param_file({**good, "extra": 1})
    missing = dict(good)
    del missing["owf"]
    with pytest.raises(ValueError):
        parse_param_file(missing)
    with pytest.raises(ValueError):
        parse_param_file({**good, "version": 99})
    with pytest.raises(ValueError):
        parse_param_file({**good, "scheme": "nope"})
    bundle = bundle_file_obj("dhss", dhss_deal(4, micro_params, DHSS_SEED).public)
    doubled = json.loads(canonical_dumps(bundle))
    doubled["w"].append(doubled["w"][0])
    with pytest.raises(ValueError):
        parse_bundle_file(doubled)
