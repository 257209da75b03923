#!/usr/bin/env python3
"""Smoke tests for the python module."""
import formprime as fp


def test_reduction():
    assert fp.reduce_sl2((5, 4, 1)) == (1, 0, 1)
    assert fp.reduce_gl2((13, -6, 21)) == (13, 6, 21)
    assert fp.discriminant((7, 6, 39)) == -1056
    assert fp.fundamental_decomposition(-1056) == (-264, 2)


def test_class_group():
    assert fp.class_number(-1056) == 16
    assert fp.group_type(-1056) == [2, 2, 4]
    assert fp.is_type_dividing_224(-1056)
    assert not fp.is_type_dividing_224(-47)
    assert fp.compose((2, 1, 2), (2, 1, 2), -15) == (1, 1, 4)
    assert fp.order_of((7, 6, 39), -1056) == 4
    assert fp.h_formula(-264, 2) == 16
    assert fp.local_unit_quotient(-7, 2, 1) == []
    assert len(fp.enumerate_reduced(-1056)) == 16


def test_genus_and_signature():
    assert fp.genus_span(-264, 2) == "Q[-1, 2, -3, -11]"
    assert fp.genus_canonical(-264, 2) == fp.genus_canonical(-132, 4)
    witness, basis, values = fp.signature((5, 2, 53))
    assert witness == 5
    assert values == [1, -1, -1, 1]


def test_prime_sets():
    a = fp.represented_primes((1, 0, 9), 10000)
    b = fp.represented_primes((1, 0, 12), 10000)
    assert a == b
    assert a[0] == 13
    assert fp.represents((1, 0, 5), 5)
    assert not fp.represents((1, 0, 25), 5)
    assert fp.falsify_pair((1, 0, 5), (1, 0, 6), 10000)[0] == 5
    obs, exp = fp.density_check((1, 0, 9), 200000)
    assert abs(obs - exp) < 0.05 and abs(exp - 0.25) < 1e-12


def test_lifts_and_pairs():
    assert fp.two_lift((1, 0, 6)) == (1, 0, 24)
    assert (1, 0, 15) in fp.same_d_partners((1, 1, 4))
    pairs = fp.cross_d_pairs([(-264, 2), (-132, 4)])
    assert pairs == [((7, 6, 39), (7, 4, 76))]
    classes = fp.build_classes([(-20, 1), (-4, 5)])
    assert len(classes) == 1
    assert classes[0]["exceptional"] == [5]
    report = fp.verify_forms([(1, 0, 9), (1, 0, 12)], limit=100000)
    assert report["pass"] and report["differences"] == []


def test_search():
    fund, orders = fp.search_hits(bound=200, f_max=4)
    ds = {d for (d, f, D, t) in fund}
    assert -163 in ds and -195 in ds and -47 not in ds


def test_errors():
    try:
        fp.class_number(-5)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for a non-discriminant")


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"PASS {name}")
            except Exception as e:  # noqa: BLE001
                failures += 1
                print(f"FAIL {name}: {e!r}")
    raise SystemExit(failures)
