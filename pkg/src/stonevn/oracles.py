"""Reference computations kept deliberately apart from the main code paths.

Nothing here imports the ring, algebra or space modules.
"""

from math import comb, gcd


def quasi_inverse_strings(coords):
    """Componentwise quasi-inverse on "p/q" strings using integer arithmetic
    only: "0" stays "0", p/q becomes q/p with the sign moved to the top."""
    out = {}
    for name, text in coords.items():
        num, _, den = text.partition("/")
        p, q = int(num), int(den or 1)
        if q < 0:
            p, q = -p, -q
        if p == 0:
            out[name] = "0"
            continue
        g = gcd(p, q)
        p, q = p // g, q // g
        p, q = (q, p) if p > 0 else (-q, -p)
        out[name] = str(p) if q == 1 else f"{p}/{q}"
    return {"coords": out}


def bell_numbers(n):
    """B_0..B_n via B_{k+1} = sum_i C(k, i) B_i."""
    bell = [1]
    for k in range(n):
        bell.append(sum(comb(k, i) * bell[i] for i in range(k + 1)))
    return bell


def is_ultrafilter(family, universe_size):
    """Brute-force test on a set of bitmasks over ``universe_size`` atoms:
    proper, upward closed, closed under meets, prime."""
    full = (1 << universe_size) - 1
    fam = set(family)
    if 0 in fam or full not in fam:
        return False
    for a in range(full + 1):
        for b in range(full + 1):
            if a in fam and (a & b) == a and b not in fam:
                return False
            if a in fam and b in fam and (a & b) not in fam:
                return False
            if (a | b) in fam and a not in fam and b not in fam:
                return False
    return True


def all_ultrafilters_brute_force(universe_size):
    """Every ultrafilter of the powerset of ``universe_size`` atoms, found by
    scanning all families of elements (feasible for <= 3 atoms)."""
    n_elems = 1 << universe_size
    found = []
    for code in range(1 << n_elems):
        family = [x for x in range(n_elems) if code >> x & 1]
        if is_ultrafilter(family, universe_size):
            found.append(frozenset(family))
    return found
