"""Weighted-automaton algebra from the ground up.

Builds a few small automata over the binary alphabet, combines them with
add / scale / kron, and contracts with pi1/pi0 — checking every step
against brute-force enumeration.
"""

from itertools import product

from shapwa import (NAlphabetWA, add, eval_wa, kron, pi0, pi1, scale,
                    wa_to_json)
from shapwa.linalg import SpMat
from shapwa.rational import Rat, ONE

B = ("0", "1")


def constant(c):
    trans = {(s,): SpMat.from_dense([[ONE]]) for s in B}
    return NAlphabetWA([B], [Rat(c)], trans, [ONE])


def count_ones():
    """f(w) = number of '1' symbols in w (two-state accumulator)."""
    m0 = SpMat.from_dense([[ONE, Rat(0)], [Rat(0), ONE]])
    m1 = SpMat.from_dense([[ONE, ONE], [Rat(0), ONE]])
    return NAlphabetWA([B], [ONE, Rat(0)], {("0",): m0, ("1",): m1},
                       [Rat(0), ONE])


def words(n):
    return ("".join(t) for t in product(B, repeat=n))


def main():
    f = count_ones()
    print("f counts ones:  f('0110') =", eval_wa(f, ("0110",)))

    g = add(f, constant(10))
    print("add shifts:     (f+10)('0110') =", eval_wa(g, ("0110",)))

    h = scale(Rat(1, 2), f)
    print("scale halves:   (f/2)('0110') =", eval_wa(h, ("0110",)))

    sq = kron(f, f)
    print("kron squares:   (f*f)('0111') =", eval_wa(sq, ("0111",)))

    # pi0 sums f over all words of a length; check by enumeration
    n = 5
    total = pi0(f, n)
    brute = sum(eval_wa(f, (w,)) for w in words(n))
    print(f"pi0(f, {n}) = {total}  (enumeration gives {brute})")
    assert total == brute

    # pi1 pairs two automata: sum over words of f(w) * f(w)
    paired = pi1(f, f, 3)
    brute = sum(eval_wa(f, (w,)) ** 2 for w in words(3))
    print(f"pi1(f, f, 3) = {paired}  (enumeration gives {brute})")
    assert paired == brute

    print("\nJSON form of the counter (transitions per symbol):")
    for key, rows in wa_to_json(f)["transitions"].items():
        print(" ", key, rows)


if __name__ == "__main__":
    main()
