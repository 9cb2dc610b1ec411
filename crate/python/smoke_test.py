"""Smoke test for the credence_py extension module.

Build the module first (see README), then run:  python python/smoke_test.py
"""

from fractions import Fraction

import credence_py as cr


def main():
    # Two tosses of a fair coin.
    space = cr.WorldSpace(["HH", "HT", "TH", "TT"])
    fair = cr.Distribution.uniform(space)
    first_heads = space.formula("HH | HT")
    second_heads = space.proposition(["HH", "TH"])
    assert fair.condition(first_heads).probability(second_heads) == Fraction(1, 2)

    # Jeffrey updating reduces to Bayes at certainty.
    assert fair.jeffrey(first_heads, 1) == fair.condition(first_heads)
    assert fair.jeffrey(first_heads, "1/2") == fair

    # Credal sets: generators with zero probability on the evidence drop out.
    k = cr.CredalSet([
        cr.Distribution(space, ["1/2", 0, 0, "1/2"]),
        cr.Distribution(space, [0, "1/2", "1/2", 0]),
        cr.Distribution(space, [0, 0, 0, 1]),
    ])
    post = k.condition(space.formula("HH | TH"))
    assert post.discarded == 1
    assert post.interval(first_heads) == (0, 1)

    # Dutch book against incoherent quotients.
    a = space.formula("HH | HT")
    book = cr.coherence_check(space, [(a, "3/5"), (~a, "3/5")])
    assert not book["coherent"] and book["guaranteed_loss"] == Fraction(1, 5)
    fine = cr.coherence_check(space, [(a, Fraction(1, 2))])
    assert fine["coherent"] and fine["witness"].probability(a) == Fraction(1, 2)

    # The lottery paradox.
    corpus, names = cr.lottery(1000, "99/100")
    assert corpus.query(names["loses_7"]) == ("Accepted", Fraction(999, 1000), Fraction(999, 1000))
    assert corpus.is_accepted(names["some_ticket_wins"])
    consistent, witness = corpus.joint_consistency()
    assert not consistent and len(witness) > 1
    assert corpus.max_meaningful_odds() == 99
    assert corpus.bet_advice("0.99961", "0.99985", 1000) == "RefuseBet:BeyondSignificance"
    assert corpus.bet_advice("0.99961", "0.99985", 10) == "TakeBet"
    assert cr.threshold_from_stakes(99) == Fraction(99, 100)

    # Statistics.
    lo, hi = cr.t_interval([1, 2, 3, 4, 5], 0.95)
    assert abs(lo - 1.0368) < 1e-3 and abs(hi - 4.9632) < 1e-3
    lo, hi = cr.binomial_ci(10, 5)
    assert abs(lo - 0.187) < 1e-3 and abs(hi - 0.813) < 1e-3
    rejects, p = cr.hypothesis_test(20, 17, 0.5, 0.05, "upper")
    assert rejects and abs(p - 1351 / 1048576) < 1e-9
    assert cr.exact_coverage(100, 0.5, cr.proportion_bound(100)) >= 0.91

    # Errors surface as ValueError with the library's message.
    try:
        cr.Distribution(space, [1, 1, 0, 0])
    except ValueError as e:
        assert "sum to exactly 1" in str(e)
    else:
        raise AssertionError("bad weights accepted")

    print("credence_py smoke test passed")


if __name__ == "__main__":
    main()
