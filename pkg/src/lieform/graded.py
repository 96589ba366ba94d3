"""Free graded-commutative algebras Λ(odd generators) ⊗ S(even generators).

A monomial is keyed by ``(mask, exps)``: bit t of ``mask`` marks the t-th odd
generator, ``exps`` is the exponent vector over the even generators.  Products
are written with odd generators in their canonical order, so every sign is a
count of transpositions against that order (Koszul convention).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import as_fraction


class AmbientMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    odd: bool | None = None

    def __post_init__(self):
        if self.degree <= 0:
            raise ValueError(f"generator {self.name!r} must have positive degree")
        parity = self.degree % 2 == 1
        if self.odd is None:
            object.__setattr__(self, "odd", parity)
        elif self.odd != parity:
            raise ValueError(f"generator {self.name!r}: parity does not match degree {self.degree}")


@lru_cache(maxsize=1 << 16)
def mask_sign(a: int, b: int) -> int:
    """Sign of reordering (odd gens of a)(odd gens of b) into canonical order."""
    s = 0
    while b:
        low = b & -b
        j = low.bit_length() - 1
        s += (a >> (j + 1)).bit_count()
        b ^= low
    return -1 if s & 1 else 1


def _bits(mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class GeneratorSet:
    """An ordered set of generators; the order is the canonical sign convention."""

    def __init__(self, generators: Iterable[Generator]):
        gens = tuple(generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.generators = gens
        self.odd = tuple(i for i, g in enumerate(gens) if g.odd)
        self.even = tuple(i for i, g in enumerate(gens) if not g.odd)
        self.odd_degrees = tuple(gens[i].degree for i in self.odd)
        self.even_degrees = tuple(gens[i].degree for i in self.even)
        # global index -> ("odd"/"even", slot)
        self.slot = {}
        for t, i in enumerate(self.odd):
            self.slot[i] = (True, t)
        for t, i in enumerate(self.even):
            self.slot[i] = (False, t)
        self.index = {g.name: i for i, g in enumerate(gens)}
        self._hash = hash(gens)

    @classmethod
    def of(cls, specs: Iterable) -> "GeneratorSet":
        return cls(Generator(*s) if not isinstance(s, Generator) else s for s in specs)

    def __len__(self) -> int:
        return len(self.generators)

    def __eq__(self, other) -> bool:
        return isinstance(other, GeneratorSet) and self.generators == other.generators

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "GeneratorSet(" + ", ".join(f"{g.name}:{g.degree}" for g in self.generators) + ")"

    @property
    def n_odd(self) -> int:
        return len(self.odd)

    @property
    def n_even(self) -> int:
        return len(self.even)

    def key_degree(self, key) -> int:
        mask, exps = key
        d = 0
        for t in _bits(mask):
            d += self.odd_degrees[t]
        for e, dg in zip(exps, self.even_degrees):
            d += e * dg
        return d

    def unit_key(self):
        return (0, (0,) * self.n_even)

    def generator_key(self, i: int):
        is_odd, t = self.slot[i]
        if is_odd:
            return (1 << t, (0,) * self.n_even)
        exps = [0] * self.n_even
        exps[t] = 1
        return (0, tuple(exps))

    def key_factors(self, key) -> list:
        """Global generator indices of a monomial, with multiplicity, in canonical order."""
        mask, exps = key
        out = [self.odd[t] for t in _bits(mask)]
        for t, e in enumerate(exps):
            out.extend([self.even[t]] * e)
        return out

    def key_str(self, key) -> str:
        mask, exps = key
        parts = [self.generators[self.odd[t]].name for t in _bits(mask)]
        for t, e in enumerate(exps):
            if e:
                nm = self.generators[self.even[t]].name
                parts.append(nm if e == 1 else f"{nm}^{e}")
        return "*".join(parts) if parts else "1"

    def key_to_json(self, key) -> list:
        mask, exps = key
        out = [[self.generators[self.odd[t]].name, 1] for t in _bits(mask)]
        out += [[self.generators[self.even[t]].name, e] for t, e in enumerate(exps) if e]
        return out

    def key_from_json(self, factors: Sequence) -> tuple:
        mask = 0
        exps = [0] * self.n_even
        sign = 1
        for name, e in factors:
            if name not in self.index:
                raise KeyError(name)
            is_odd, t = self.slot[self.index[name]]
            if is_odd:
                if e != 1 or mask >> t & 1:
                    return None, 0
                sign *= mask_sign(mask, 1 << t)
                mask |= 1 << t
            else:
                exps[t] += e
        return (mask, tuple(exps)), sign


def monomial_mul(a, b):
    """Product of two monomial keys: (key, sign) or (None, 0)."""
    ma, ea = a
    mb, eb = b
    if ma & mb:
        return None, 0
    return (ma | mb, tuple(x + y for x, y in zip(ea, eb))), mask_sign(ma, mb)


class GradedElement:
    """Sparse element: monomial key -> nonzero Fraction."""

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: GeneratorSet, terms: Mapping | None = None):
        self.ambient = ambient
        self.terms = {k: as_fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def _raw(cls, ambient, terms: dict) -> "GradedElement":
        e = object.__new__(cls)
        e.ambient = ambient
        e.terms = terms
        return e

    @classmethod
    def zero(cls, ambient) -> "GradedElement":
        return cls._raw(ambient, {})

    @classmethod
    def one(cls, ambient, c=1) -> "GradedElement":
        return cls(ambient, {ambient.unit_key(): c})

    @classmethod
    def gen(cls, ambient, name_or_index, c=1) -> "GradedElement":
        i = ambient.index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        return cls(ambient, {ambient.generator_key(i): c})

    @classmethod
    def monomial(cls, ambient, key, c=1) -> "GradedElement":
        return cls(ambient, {key: c})

    def _check(self, other: "GradedElement"):
        if self.ambient is not other.ambient and self.ambient != other.ambient:
            raise AmbientMismatch("elements live in different algebras")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedElement):
            return self.ambient == other.ambient and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            parts.append(f"{self.terms[k]}*{self.ambient.key_str(k)}")
        return " + ".join(parts)

    def copy(self) -> "GradedElement":
        return GradedElement._raw(self.ambient, dict(self.terms))

    def __add__(self, other: "GradedElement") -> "GradedElement":
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            nv = t.get(k, 0) + v
            if nv:
                t[k] = nv
            else:
                t.pop(k, None)
        return GradedElement._raw(self.ambient, t)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            nv = t.get(k, 0) - v
            if nv:
                t[k] = nv
            else:
                t.pop(k, None)
        return GradedElement._raw(self.ambient, t)

    def __neg__(self) -> "GradedElement":
        return GradedElement._raw(self.ambient, {k: -v for k, v in self.terms.items()})

    def scale(self, c) -> "GradedElement":
        c = as_fraction(c)
        if not c:
            return GradedElement.zero(self.ambient)
        return GradedElement._raw(self.ambient, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GradedElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def degrees(self) -> set:
        return {self.ambient.key_degree(k) for k in self.terms}

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError("element is not homogeneous")
        return ds.pop()

    def homogeneous(self, n: int) -> "GradedElement":
        deg = self.ambient.key_degree
        return GradedElement._raw(self.ambient, {k: v for k, v in self.terms.items() if deg(k) == n})

    def truncate(self, cap: int) -> "GradedElement":
        return truncate(self, cap)

    def coefficient(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def to_json(self) -> list:
        return [{"monomial": self.ambient.key_to_json(k), "coef": fraction_str(v)}
                for k, v in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, ambient, data: Sequence) -> "GradedElement":
        t: dict = {}
        for term in data:
            key, sign = ambient.key_from_json(term["monomial"])
            if key is None:
                continue
            t[key] = t.get(key, 0) + sign * as_fraction(term["coef"])
        return cls(ambient, t)


def fraction_str(v) -> str:
    v = as_fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def multiply(a: GradedElement, b: GradedElement) -> GradedElement:
    a._check(b)
    out: dict = {}
    for ka, ca in a.terms.items():
        ma, ea = ka
        for kb, cb in b.terms.items():
            mb, eb = kb
            if ma & mb:
                continue
            key = (ma | mb, tuple(x + y for x, y in zip(ea, eb)))
            v = ca * cb if mask_sign(ma, mb) > 0 else -ca * cb
            nv = out.get(key, 0) + v
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
    return GradedElement._raw(a.ambient, out)


def truncate(e: GradedElement, cap: int) -> GradedElement:
    if cap < 0:
        raise ValueError("cap must be non-negative")
    deg = e.ambient.key_degree
    return GradedElement._raw(e.ambient, {k: v for k, v in e.terms.items() if deg(k) <= cap})


# ---------- derivations ----------

def derivation(ambient: GeneratorSet, images: Mapping[int, GradedElement], odd: bool) -> Callable:
    """The derivation of the given parity with prescribed values on generators.

    Generators missing from `images` are sent to zero.  Returns a function on
    GradedElements; results on monomials are memoized per call site.
    """
    imgs = {i: v for i, v in images.items() if v}
    odd_img = {ambient.slot[i][1]: v for i, v in imgs.items() if ambient.slot[i][0]}
    even_img = {ambient.slot[i][1]: v for i, v in imgs.items() if not ambient.slot[i][0]}
    cache: dict = {}

    def on_key(key) -> dict:
        hit = cache.get(key)
        if hit is not None:
            return hit
        mask, exps = key
        out: dict = {}
        bits = _bits(mask)
        for pos, t in enumerate(bits):
            img = odd_img.get(t)
            if img is None:
                continue
            sgn = -1 if (odd and pos & 1) else 1
            rest = mask & ~(1 << t)
            # prefix * img * suffix == sign * img-term placed into the rest
            before = mask & ((1 << t) - 1)
            after = rest & ~before
            for (mi, ei), c in img.terms.items():
                if mi & rest:
                    continue
                s = sgn * mask_sign(before, mi) * mask_sign(before | mi, after)
                nkey = (before | mi | after, tuple(x + y for x, y in zip(exps, ei)))
                nv = out.get(nkey, 0) + (c if s > 0 else -c)
                if nv:
                    out[nkey] = nv
                else:
                    out.pop(nkey, None)
        if even_img:
            base_sign = -1 if (odd and len(bits) & 1) else 1
            for t, img in even_img.items():
                e = exps[t]
                if not e:
                    continue
                lowered = list(exps)
                lowered[t] -= 1
                for (mi, ei), c in img.terms.items():
                    if mi & mask:
                        continue
                    s = base_sign * mask_sign(mask, mi)
                    nkey = (mask | mi, tuple(x + y for x, y in zip(lowered, ei)))
                    v = e * c if s > 0 else -e * c
                    nv = out.get(nkey, 0) + v
                    if nv:
                        out[nkey] = nv
                    else:
                        out.pop(nkey, None)
        cache[key] = out
        return out

    def apply(x: GradedElement) -> GradedElement:
        if x.ambient != ambient:
            raise AmbientMismatch("derivation applied outside its algebra")
        out: dict = {}
        for k, c in x.terms.items():
            for nk, v in on_key(k).items():
                nv = out.get(nk, 0) + c * v
                if nv:
                    out[nk] = nv
                else:
                    out.pop(nk, None)
        return GradedElement._raw(ambient, out)

    apply.on_key = on_key
    return apply


def interior_derivation(alpha: Mapping, target: GradedElement) -> GradedElement:
    """ι(α): the odd derivation with ι(α)v = α(v) on odd generators.

    `alpha` maps generator names or indices to coefficients.
    """
    amb = target.ambient
    images = {}
    for g, c in alpha.items():
        i = amb.index[g] if isinstance(g, str) else g
        if not amb.generators[i].odd:
            raise ValueError("ι(α) is defined by a functional on odd generators")
        images[i] = GradedElement.one(amb, c)
    return derivation(amb, images, odd=True)(target)


def polynomial_derivation(alpha: Mapping, target: GradedElement) -> GradedElement:
    """∂(α): the even derivation with ∂(α)v = α(v) on even generators."""
    amb = target.ambient
    images = {}
    for g, c in alpha.items():
        i = amb.index[g] if isinstance(g, str) else g
        if amb.generators[i].odd:
            raise ValueError("∂(α) is defined by a functional on even generators")
        images[i] = GradedElement.one(amb, c)
    return derivation(amb, images, odd=False)(target)


def linear_images(ambient: GeneratorSet, indices: Sequence[int], matrix) -> dict:
    """Images gen_j -> sum_i matrix[i, j] gen_i for generators listed in `indices`.

    `matrix` acts on coordinate columns relative to `indices`.
    """
    images = {}
    n = len(indices)
    for j in range(n):
        terms = {}
        for i in range(n):
            v = matrix[i, j]
            if v:
                terms[ambient.generator_key(indices[i])] = v
        images[indices[j]] = GradedElement(ambient, terms)
    return images


# ---------- algebra homomorphisms ----------

def homomorphism(source: GeneratorSet, target: GeneratorSet,
                 images: Mapping[int, GradedElement]) -> Callable:
    """The algebra map source -> target determined on generators.

    Images of odd generators must be odd; missing generators go to zero.
    """
    one = GradedElement.one(target)
    zero = GradedElement.zero(target)
    odd_img = [images.get(i, zero) for i in source.odd]
    even_img = [images.get(i, zero) for i in source.even]
    powers: dict = {}
    cache: dict = {}

    def power(t: int, e: int) -> GradedElement:
        if e == 0:
            return one
        key = (t, e)
        if key not in powers:
            powers[key] = multiply(power(t, e - 1), even_img[t])
        return powers[key]

    def on_key(key) -> GradedElement:
        hit = cache.get(key)
        if hit is not None:
            return hit
        mask, exps = key
        acc = one
        for t in _bits(mask):
            acc = multiply(acc, odd_img[t])
            if not acc:
                break
        if acc:
            for t, e in enumerate(exps):
                if e:
                    acc = multiply(acc, power(t, e))
                    if not acc:
                        break
        cache[key] = acc
        return acc

    def apply(x: GradedElement) -> GradedElement:
        if x.ambient != source:
            raise AmbientMismatch("homomorphism applied outside its source")
        out: dict = {}
        for k, c in x.terms.items():
            for nk, v in on_key(k).terms.items():
                nv = out.get(nk, 0) + c * v
                if nv:
                    out[nk] = nv
                else:
                    out.pop(nk, None)
        return GradedElement._raw(target, out)

    apply.on_key = on_key
    return apply


def embed(x: GradedElement, target: GeneratorSet, index_map: Mapping[int, int] | None = None) -> GradedElement:
    """Transport an element into a larger algebra along a generator map (default: by name)."""
    src = x.ambient
    if index_map is None:
        index_map = {i: target.index[g.name] for i, g in enumerate(src.generators)}
    images = {i: GradedElement.gen(target, j) for i, j in index_map.items()}
    return homomorphism(src, target, images)(x)


# ---------- bases ----------

def _odd_subsets(degrees: Sequence[int], cap: int):
    """(mask, degree) for subsets of odd generators with degree <= cap."""
    out = []

    def rec(t, mask, d):
        if t == len(degrees):
            out.append((mask, d))
            return
        rec(t + 1, mask, d)
        if d + degrees[t] <= cap:
            rec(t + 1, mask | (1 << t), d + degrees[t])

    rec(0, 0, 0)
    return out


def _exponent_vectors(degrees: Sequence[int], n: int):
    """Exponent vectors over even generators with total degree exactly n."""
    out = []
    k = len(degrees)

    def rec(t, rem, acc):
        if t == k:
            if rem == 0:
                out.append(tuple(acc))
            return
        dg = degrees[t]
        for e in range(rem // dg + 1):
            acc.append(e)
            rec(t + 1, rem - e * dg, acc)
            acc.pop()

    if k == 0:
        return [()] if n == 0 else []
    rec(0, n, [])
    return out


def basis_of_degree(gens: GeneratorSet, n: int) -> list:
    """Canonically ordered monomial keys spanning the degree-n component."""
    if n < 0:
        return []
    if any(d <= 0 for d in gens.even_degrees):
        raise ValueError("even generators must have positive degree")
    keys = []
    for mask, d in _odd_subsets(gens.odd_degrees, n):
        for exps in _exponent_vectors(gens.even_degrees, n - d):
            keys.append((mask, exps))
    keys.sort()
    return keys


def monomials_by_counts(gens: GeneratorSet, n_odd: int, n_even: int,
                        odd_slots: Sequence[int] | None = None,
                        even_slots: Sequence[int] | None = None) -> list:
    """Monomials with n_odd odd factors and n_even even factors (word-length bigrading)."""
    odd_slots = range(gens.n_odd) if odd_slots is None else odd_slots
    even_slots = range(gens.n_even) if even_slots is None else even_slots
    keys = []
    for combo in combinations(odd_slots, n_odd):
        mask = 0
        for t in combo:
            mask |= 1 << t
        for ev in combinations_with_replacement(even_slots, n_even):
            exps = [0] * gens.n_even
            for t in ev:
                exps[t] += 1
            keys.append((mask, tuple(exps)))
    keys.sort()
    return keys


def exterior_dims(degrees: Sequence[int], cap: int) -> list:
    """dim of the degree-n part of Λ(odd generators of the given degrees), n <= cap."""
    dims = [0] * (cap + 1)
    dims[0] = 1
    for d in degrees:
        for n in range(cap, d - 1, -1):
            dims[n] += dims[n - d]
    return dims


def symmetric_dims(degrees: Sequence[int], cap: int) -> list:
    dims = [0] * (cap + 1)
    dims[0] = 1
    for d in degrees:
        for n in range(d, cap + 1):
            dims[n] += dims[n - d]
    return dims


def series_dims(gens: GeneratorSet, cap: int) -> list:
    """Generating-function count of basis_of_degree sizes for n <= cap."""
    ext = exterior_dims(gens.odd_degrees, cap)
    sym = symmetric_dims(gens.even_degrees, cap)
    return [sum(ext[a] * sym[n - a] for a in range(n + 1)) for n in range(cap + 1)]
