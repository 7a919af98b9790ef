"""Slow reference implementations used only by the tests."""

from fractions import Fraction


def pseudo_precisions_oracle(relevant, n_relevant=None):
    """Exact eleven pseudo-precisions by enumerating every ranking prefix."""
    relevant = list(map(bool, relevant))
    C = sum(relevant) if n_relevant is None else n_relevant
    if C == 0:
        return [Fraction(0)] * 11
    points = []
    for n in range(1, len(relevant) + 1):
        hits = sum(relevant[:n])
        points.append((Fraction(hits, C), Fraction(hits, n)))
    out = []
    for level in range(11):
        ok = [p for rec, p in points if rec >= Fraction(level, 10)]
        out.append(max(ok) if ok else Fraction(0))
    return out


def ap_oracle(relevant, n_relevant=None):
    return sum(pseudo_precisions_oracle(relevant, n_relevant)) / 11
