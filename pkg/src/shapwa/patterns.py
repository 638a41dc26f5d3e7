"""Coalition patterns over Sigma extended with the placeholder '#'.

A pattern fixes some positions of a sequence ("present" features) and
leaves the rest as '#' ("absent" features).  Feature indices are
1-based throughout.
"""

from math import factorial

from .rational import Rat, ZERO

HASH = "#"


def swap(p, sigma, i):
    """Replace position i of the pattern with the data symbol sigma."""
    if sigma == HASH:
        raise ValueError("swap target must be a data symbol, not '#'")
    if not (1 <= i <= len(p)):
        raise IndexError(f"position {i} out of range for |p|={len(p)}")
    return p[:i - 1] + sigma + p[i:]


def do_op(p, w_prime, w):
    """Fill '#' positions of p from w_prime and fixed positions from w."""
    if not (len(p) == len(w_prime) == len(w)):
        raise ValueError("length mismatch")
    return "".join(w_prime[j] if p[j] == HASH else w[j] for j in range(len(p)))


def matches(w, p):
    """Membership of w in the language of p."""
    if len(w) != len(p):
        raise ValueError("length mismatch")
    return all(pj == HASH or pj == wj for pj, wj in zip(p, w))


def hash_count(p):
    return sum(1 for c in p if c == HASH)


def coalition_weight(p, w, i):
    """The Shapley coalition weight of pattern p for feature i of w.

    (|p|_# - 1)! (|w| - |p|_#)! / |w|!  when w is in L_p and p_i = '#',
    else 0.  These weights sum to 1 over the eligible patterns.
    """
    if len(p) != len(w):
        raise ValueError("length mismatch")
    if not (1 <= i <= len(w)):
        raise IndexError(f"position {i} out of range")
    if p[i - 1] != HASH or not matches(w, p):
        return ZERO
    k = hash_count(p)
    n = len(w)
    return Rat(factorial(k - 1) * factorial(n - k), factorial(n))


def patterns_for(w, i):
    """All patterns p with w in L_p and p_i = '#' (2^(|w|-1) of them)."""
    n = len(w)
    out = []
    free = [j for j in range(n) if j != i - 1]
    for mask in range(1 << len(free)):
        chars = list(w)
        chars[i - 1] = HASH
        for b, j in enumerate(free):
            if mask >> b & 1:
                chars[j] = HASH
        out.append("".join(chars))
    return out
