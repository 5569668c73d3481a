from stonevn import oracles


def test_bell_numbers():
    assert oracles.bell_numbers(7) == [1, 1, 2, 5, 15, 52, 203, 877]


def test_quasi_inverse_oracle():
    got = oracles.quasi_inverse_strings({"s1": "2", "s2": "0", "s3": "-3", "s4": "6/-4"})
    assert got == {"coords": {"s1": "1/2", "s2": "0", "s3": "-1/3", "s4": "-2/3"}}


def test_brute_force_ultrafilters():
    assert len(oracles.all_ultrafilters_brute_force(0)) == 0
    found = oracles.all_ultrafilters_brute_force(2)
    assert sorted(sorted(u) for u in found) == [[1, 3], [2, 3]]
    assert not oracles.is_ultrafilter({3}, 2)
