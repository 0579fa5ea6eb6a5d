"""Fiberwise Fourier correspondence between the two sides of the mirror.

On coefficients the correspondence is a relabeling: the boundary-class
coefficient f_v becomes the coefficient of the mirror monomial z^v.  All of
the content is in the algebra laws it transports -- lattice convolution on
one side becomes the product of Laurent objects on the other -- and in the
truncated identity checked by ``exp_superpotential``.
"""

from __future__ import annotations

from fractions import Fraction

from .disc_algebra import (
    AdmissibleFunction,
    QLaurent,
    class_weight,
    boundary_class,
    iter_disc_classes,
    q_monomial_exponents,
)


class ZLaurent:
    """Sparse Laurent object in the mirror coordinates z_1..z_n.

    Coefficients are QLaurent, so a term is (z-exponent, q-exponent, rational)
    and exact equality is equality of every such term.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for w, coeff in items:
                if not coeff:
                    continue
                key = tuple(int(c) for c in w)
                acc = self.terms.get(key)
                merged = coeff if acc is None else acc + coeff
                if merged:
                    self.terms[key] = merged
                else:
                    self.terms.pop(key, None)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, ZLaurent) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            merged = out.get(w, QLaurent()) + c
            if merged:
                out[w] = merged
            else:
                out.pop(w, None)
        res = ZLaurent()
        res.terms = out
        return res

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        out = ZLaurent()
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(w1, w2))
                merged = out.terms.get(key, QLaurent()) + c1 * c2
                if merged:
                    out.terms[key] = merged
                else:
                    out.terms.pop(key, None)
        return out

    def scale(self, factor):
        res = ZLaurent()
        for w, c in self.terms.items():
            scaled = c.scale(factor) if isinstance(factor, (int, Fraction)) else c * factor
            if scaled:
                res.terms[w] = scaled
        return res

    def coefficient(self, w):
        return self.terms.get(tuple(w), QLaurent())

    def support(self):
        return sorted(self.terms)

    def evaluate(self, z, qvals):
        """Complex value at nonzero mirror coordinates and numeric q."""
        total = 0 + 0j
        for w, c in self.terms.items():
            mono = 1 + 0j
            for zj, wj in zip(z, w):
                mono *= zj ** wj
            total += c.evaluate(qvals) * mono
        return total

    def to_json(self):
        out = []
        for w, c in sorted(self.terms.items()):
            for entry in c.to_json():
                out.append(
                    {
                        "z_exponents": list(w),
                        "q_exponents": entry["q_exponents"],
                        "coefficient": entry["coefficient"],
                    }
                )
        return out

    def __repr__(self):
        return f"ZLaurent({self.terms!r})"


def transform(f: AdmissibleFunction) -> ZLaurent:
    """Fourier series of a finitely supported function: f_v -> z^v term."""
    return ZLaurent({v: c for v, c in f.terms.items()})


def inverse_transform(phi: ZLaurent) -> AdmissibleFunction:
    """Fourier coefficients of a Laurent object: z^w term -> value at v = w."""
    return AdmissibleFunction({w: c for w, c in phi.terms.items()})


def exp_superpotential(data, max_total):
    """Truncated exponential of the superpotential, with exact coefficients.

    Sums prod_i (e^{lambda_i} z^{v_i})^{k_i} / (k_1! ... k_d!) over all disc
    classes of total degree at most ``max_total``, merging equal
    (z-monomial, q-monomial) pairs.  Distinct classes never merge -- the class
    is recoverable from the pair -- so this equals the transform of the
    disc-count series truncated at the same order, term for term.
    """
    if max_total < 0:
        raise ValueError("truncation order must be nonnegative")
    out = ZLaurent()
    for k in iter_disc_classes(data.d, max_total):
        w = boundary_class(data, k)
        mono = QLaurent.monomial(
            q_monomial_exponents(data, k), Fraction(1, class_weight(k))
        )
        merged = out.terms.get(w, QLaurent()) + mono
        out.terms[w] = merged
    return out
