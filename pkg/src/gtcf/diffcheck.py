"""Verification of candidate ring endomorphisms and the Z x| Z replays.

A candidate sends every variable of a presented ring to a polynomial and acts
on constants by a cyclotomic automorphism.  Rational function fields are
presented by adjoining inverses of finitely many denominators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra.fields import QQ, FieldAut, cyclotomic, parse_field
from .algebra.ideal import Ideal
from .algebra.poly import Poly, PolyRing
from .errors import ValidationError
from .group_core import parse_word


@dataclass
class PresentedRing:
    """K[vars]/I; ``inverted`` names pairs (u, d) with the relation u*d - 1."""

    ring: PolyRing
    relations: List[Poly] = field(default_factory=list)
    inverted: List[Tuple[str, Poly]] = field(default_factory=list)

    def __post_init__(self):
        self.ideal = Ideal(self.ring, self.all_relations())
        if self.ideal.is_unit():
            raise ValidationError("the relation ideal contains 1", kind="inconsistent-ring")

    @classmethod
    def build(cls, variables: Sequence[str], relations: Sequence = (), field_=QQ,
              inverse: Optional[Mapping[str, str]] = None) -> "PresentedRing":
        """``inverse`` maps a new variable name to the polynomial it inverts."""
        names = list(variables) + list((inverse or {}).keys())
        ring = PolyRing(names, parse_field(field_))
        rel = [ring(r) if isinstance(r, str) else r for r in relations]
        inv = [(u, ring(d)) for u, d in (inverse or {}).items()]
        return cls(ring, rel, inv)

    def all_relations(self) -> List[Poly]:
        return list(self.relations) + [self.ring.var(u) * d - 1 for u, d in self.inverted]

    def poly(self, p) -> Poly:
        return self.ring(p) if isinstance(p, str) else p

    def equal(self, a, b) -> bool:
        return self.ideal.contains(self.poly(a) - self.poly(b))

    @classmethod
    def from_json(cls, doc: dict) -> "PresentedRing":
        return cls.build(doc["variables"], doc.get("relations", []), doc.get("field", "Q"), doc.get("inverse"))


@dataclass
class EndoCandidate:
    """Images of (some) variables; ``aut`` acts on the coefficients."""

    ring: PresentedRing
    images: Dict[str, Poly]
    aut: FieldAut
    name: str = "phi"

    @classmethod
    def build(cls, R: PresentedRing, images: Mapping[str, object], k: int = 1, name: str = "phi") -> "EndoCandidate":
        imgs = {}
        for v, p in images.items():
            if v not in R.ring.index:
                raise ValidationError(f"image given for unknown variable {v!r}", kind="unknown-variable")
            imgs[v] = R.poly(p) if isinstance(p, (str, Poly)) else R.ring.const(p)
        return cls(R, imgs, FieldAut(R.ring.field, k), name)

    def __call__(self, p) -> Poly:
        p = self.ring.poly(p)
        missing = sorted(p.variables() - set(self.images))
        if missing:
            raise ValidationError(f"{self.name} is not defined on {', '.join(missing)}", kind="undefined-composition")
        return p.substitute(self.images, self.ring.ring, coeff_map=self.aut)

    def defined_on(self, p) -> bool:
        return self.ring.poly(p).variables() <= set(self.images)


@dataclass
class Verdict:
    ok: bool
    witness: Optional[str] = None
    details: List[dict] = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        d = {"verdict": self.ok, "details": self.details}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def verify_hom(R: PresentedRing, phi: EndoCandidate) -> Verdict:
    """phi is well defined iff it sends every relation into the ideal."""
    missing = [v for v in R.ring.vars if v not in phi.images]
    if missing:
        raise ValidationError(f"no image for {', '.join(missing)}", kind="undefined-composition")
    details = []
    for r in R.all_relations():
        img = phi(r)
        ok = R.ideal.contains(img)
        details.append({"relation": str(r), "image": str(img), "in_ideal": ok})
        if not ok:
            return Verdict(False, f"{img} is not in the relation ideal", details)
    return Verdict(True, None, details)


def apply_word(maps: Mapping[str, EndoCandidate], word, p):
    """w = l1 l2 ... lk acts as l1(l2(...lk(p)))."""
    w = parse_word(word) if isinstance(word, str) else word
    for name, e in reversed(w.letters):
        key = name if e == 1 else f"{name}^{e}"
        if key not in maps:
            raise ValidationError(f"no candidate supplied for {key}", kind="undefined-composition")
        p = maps[key](p)
    return p


def verify_relation(R: PresentedRing, maps: Mapping[str, EndoCandidate], lhs, rhs,
                    generators: Sequence) -> Verdict:
    """lhs and rhs composites agree on every generator modulo the relations."""
    details = []
    for g in generators:
        a = apply_word(maps, lhs, g)
        b = apply_word(maps, rhs, g)
        ok = R.equal(a, b)
        details.append({"generator": str(g), "lhs": str(a), "rhs": str(b), "holds": ok})
        if not ok:
            return Verdict(False, str(g), details)
    return Verdict(True, None, details)


# ---------------------------------------------------------------- replays


@dataclass
class Identity:
    text: str
    holds: bool
    lhs: str = ""
    rhs: str = ""

    def to_json(self) -> dict:
        return {"identity": self.text, "holds": self.holds, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class ReplayReport:
    scenario: str
    params: dict
    identities: List[Identity]
    conclusion: dict = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return all(i.holds for i in self.identities)

    @property
    def verdict(self) -> bool:
        return self.all_hold and self.conclusion.get("as_expected", True)

    def first_failure(self) -> Optional[Identity]:
        for i in self.identities:
            if not i.holds:
                return i
        return None

    def to_json(self) -> dict:
        f = self.first_failure()
        return {
            "schema": "gtcf.diffcheck/1",
            "scenario": self.scenario,
            "params": self.params,
            "verdict": self.verdict,
            "identities": [i.to_json() for i in self.identities],
            "conclusion": self.conclusion,
            "witness": None if f is None else f.text,
        }


# scenario A: elements zeta^a * sigma^j(b) as pairs (c, j), constants have j = None

class _ChainModel:
    """Evaluator for sigma, tau on Q(zeta3)-multiples of sigma^j(b).

    sigma(zeta) = tau(zeta) = zeta^2, tau sigma^j = sigma^-j tau and
    tau(b) = eps * zeta * sigma(b) (eps = 1 unless mutated).
    """

    def __init__(self, n: int, i: int, eps: int = 1):
        self.F = cyclotomic(3)
        self.z = self.F.zeta()
        self.n, self.i, self.eps = n, i, eps
        self.s = FieldAut(self.F, 2)

    def sig_c(self, c, m: int):
        a = FieldAut.identity(self.F)
        step = self.s if m >= 0 else self.s.inverse()
        for _ in range(abs(m)):
            a = a.compose(step)
        return a(c)

    def ev(self, e):
        tag = e[0]
        if tag == "b":
            return (self.F.one, 0)
        if tag == "c":
            return (e[1], None)
        if tag == "mul":
            x, y = self.ev(e[1]), self.ev(e[2])
            if x[1] is not None and y[1] is not None:
                raise ValueError("product of two b-terms")
            return (x[0] * y[0], x[1] if x[1] is not None else y[1])
        if tag == "pow":
            x = self.ev(e[1])
            return (x[0] ** e[2], None)
        if tag == "sig":
            x = self.ev(e[2])
            j = None if x[1] is None else x[1] + e[1]
            return (self.sig_c(x[0], e[1]), j)
        if tag == "tau":
            x = self.ev(e[1])
            c = self.s(x[0])
            if x[1] is None:
                return (c, None)
            j = x[1]
            return (c * self.sig_c(self.z, -j) * self.eps, 1 - j)
        raise ValueError(tag)

    def reduce(self, v):
        """Bring sigma^j(b) into 0 <= j < n using sigma^n(b) = zeta^i b."""
        c, j = v
        if j is None:
            return v
        zi = self.z ** self.i
        while j >= self.n:
            c = c * self.sig_c(zi, j - self.n)
            j -= self.n
        while j < 0:
            # sigma^j(b) = sigma^j(sigma^n(b)) / sigma^j(zeta^i)
            c = c / self.sig_c(zi, j)
            j += self.n
        return (c, j)


def _fmt(e) -> str:
    tag = e[0]
    if tag == "b":
        return "b"
    if tag == "c":
        return e[2]
    if tag == "mul":
        return f"{_fmt(e[1])}*{_fmt(e[2])}"
    if tag == "pow":
        return f"({_fmt(e[1])})^{e[2]}"
    if tag == "sig":
        m = e[1]
        s = "sigma" if m == 1 else f"sigma^{m}"
        return f"{s}({_fmt(e[2])})"
    if tag == "tau":
        return f"tau({_fmt(e[1])})"
    raise ValueError(tag)


def _subst(e, old, new):
    if e == old:
        return new
    if e[0] in ("mul",):
        return (e[0], _subst(e[1], old, new), _subst(e[2], old, new))
    if e[0] == "sig":
        return ("sig", e[1], _subst(e[2], old, new))
    if e[0] == "tau":
        return ("tau", _subst(e[1], old, new))
    if e[0] == "pow":
        return ("pow", _subst(e[1], old, new), e[2])
    return e


def _scenario_a(n: int, mutate: bool) -> ReplayReport:
    if n < 1 or n % 2 == 0:
        raise ValidationError("scenario A needs an odd n >= 1", kind="invalid-params")
    identities: List[Identity] = []
    conclusions = []
    for i in range(3):
        M = _ChainModel(n, i, eps=-1 if mutate else 1)
        z = M.z
        B = ("b",)
        Z = ("c", z, "zeta")
        Zi = ("c", z ** i, f"zeta^{i}")
        Z2 = ("c", z * z, "zeta^2")
        # steps: (lhs, rhs, how, extra); how in eval | hyp | subst
        chain1 = [
            (("sig", n, ("tau", B)), ("sig", n, ("mul", Z, ("sig", 1, B))), "eval"),
            (("sig", n, ("mul", Z, ("sig", 1, B))), ("mul", ("sig", n, Z), ("sig", 1, ("sig", n, B))), "eval"),
            (("mul", ("sig", n, Z), ("sig", 1, ("sig", n, B))), ("mul", ("sig", n, Z), ("sig", 1, ("mul", Zi, B))), "hyp"),
            (("mul", ("sig", n, Z), ("sig", 1, ("mul", Zi, B))),
             ("mul", ("mul", ("sig", n, Z), ("sig", 1, Zi)), ("sig", 1, B)), "eval"),
        ]
        chain2 = [
            (B, ("mul", ("sig", -n, Zi), ("sig", -n, B)), "hyp"),
            (("mul", ("sig", -n, Zi), ("sig", -n, B)), ("mul", ("pow", ("sig", -n, Z), i), ("sig", -n, B)), "eval"),
            (("mul", ("pow", ("sig", -n, Z), i), ("sig", -n, B)), ("mul", ("pow", Z2, i), ("sig", -n, B)), "eval"),
            (("mul", ("pow", Z2, i), ("sig", -n, B)), ("mul", ("pow", Zi, -1), ("sig", -n, B)), "eval"),
            (("sig", -n, B), ("mul", Zi, B), "hyp"),
        ]
        chain3 = [
            (("sig", n, ("tau", B)), ("tau", ("sig", -n, B)), "eval"),
            (("tau", ("sig", -n, B)), ("tau", ("mul", Zi, B)), "subst"),
            (("tau", ("mul", Zi, B)), ("mul", ("mul", ("sig", 1, Zi), Z), ("sig", 1, B)), "eval"),
        ]
        established = []
        for lhs, rhs, how in chain1 + chain2 + chain3:
            a, b = M.ev(lhs), M.ev(rhs)
            if how == "eval":
                ok = a == b
            elif how == "hyp":
                ok = M.reduce(a) == M.reduce(b)
            else:
                ok = False
                for u, v in established:
                    if _subst(lhs, u, v) == rhs:
                        ok = True
                        break
            if ok:
                established.append((lhs, rhs))
            identities.append(Identity(f"[i={i}] {_fmt(lhs)} = {_fmt(rhs)}", ok, _fmt(lhs), _fmt(rhs)))
        # comparing the two expressions for sigma^n(tau(b)) forces sigma^n(zeta) = zeta
        forced = M.sig_c(z, n)
        conclusions.append({
            "i": i,
            "forced": "sigma^n(zeta) = zeta",
            "actual": f"sigma^{n}(zeta) = {M.F.format(forced)}",
            "contradiction": forced != z,
        })
    contra = all(c["contradiction"] for c in conclusions)
    return ReplayReport(
        "A", {"n": n, "mutated": mutate}, identities,
        {"cases": conclusions, "contradiction": contra, "as_expected": contra},
    )


def _scenario_b(n: int, mutate: bool) -> ReplayReport:
    if n < 3:
        raise ValidationError("scenario B needs n > 2", kind="invalid-params")
    names = [f"x{k}" for k in range(n - 1)]
    R = PresentedRing.build(names)
    ring = R.ring
    xs = [ring.var(v) for v in names]
    last = -sum(xs[1:], xs[0])  # x_{n-1} := -(x_0 + ... + x_{n-2})
    x = xs + [last]
    sigma = EndoCandidate.build(R, {names[k]: x[k + 1] for k in range(n - 1)}, name="sigma'")
    sigma_inv = EndoCandidate.build(R, {names[0]: x[n - 1], **{names[k]: x[k - 1] for k in range(1, n - 1)}},
                                    name="sigma'^-1")
    timg = {names[0]: -x[0]}
    for k in range(1, n - 1):
        timg[names[k]] = -x[n - k]
    if mutate:
        timg[names[1]] = -x[1]
    tau = EndoCandidate.build(R, timg, name="tau'")
    maps = {"sigma": sigma, "sigma^-1": sigma_inv, "tau": tau}
    ids: List[Identity] = []

    def record(text, a, b):
        ids.append(Identity(text, R.equal(a, b), str(a), str(b)))

    record("sigma'^-1(x0) = x_{n-1}", sigma_inv(x[0]), x[n - 1])
    record("sigma'(x_{n-1}) = x0", sigma(x[n - 1]), x[0])
    for k in range(n - 1):
        record(f"sigma'(sigma'^-1(x{k})) = x{k}", sigma(sigma_inv(x[k])), x[k])
        record(f"sigma'^-1(sigma'(x{k})) = x{k}", sigma_inv(sigma(x[k])), x[k])
    record("tau'(x0) = -x0", tau(x[0]), -x[0])
    rel = verify_relation(R, maps, "sigma*tau", "tau*sigma^-1", x[: n - 1])
    for d in rel.details:
        ids.append(Identity(f"sigma'(tau'({d['generator']})) = tau'(sigma'^-1({d['generator']}))",
                            d["holds"], d["lhs"], d["rhs"]))
    partial = []
    acc = ring.zero()
    term = x[0]
    for k in range(1, n + 1):
        acc = acc + term
        term = sigma(term)
        zero = R.ideal.contains(acc)
        partial.append({"k": k, "sum": str(acc), "zero": zero})
    sums_ok = all(not p["zero"] for p in partial[:-1]) and partial[-1]["zero"]
    ids.append(Identity(f"c + sigma(c) + ... + sigma^{n - 1}(c) = 0 and no shorter partial sum vanishes", sums_ok))
    return ReplayReport("B", {"n": n, "mutated": mutate}, ids,
                        {"partial_sums": partial, "relation_witness": rel.witness})


def _yname(i: int) -> str:
    return f"y{i}" if i >= 0 else f"y_m{-i}"


def _cname(i: int) -> str:
    return f"c{i}" if i >= 0 else f"c_m{-i}"


def _scenario_c(lo: int, hi: int, mutate: bool) -> ReplayReport:
    if lo > 0 or hi < 1 or lo > hi:
        raise ValidationError("the window must contain 0 and 1", kind="invalid-params")
    F = cyclotomic(3)
    idx = list(range(lo, hi + 1))
    R = PresentedRing.build([_yname(i) for i in idx], field_=F)
    ring = R.ring
    z = ring.zeta()
    y = {i: ring.var(_yname(i)) for i in idx}

    def e(i):
        return z if i % 2 == 0 else z * z

    s_img = {_yname(i): y[i + 1] for i in idx if i + 1 <= hi}
    si_img = {_yname(i): y[i - 1] for i in idx if i - 1 >= lo}
    t_img = {_yname(i): e(i) * y[1 - i] for i in idx if lo <= 1 - i <= hi}
    if mutate:
        t_img[_yname(0)] = -t_img[_yname(0)]
    sigma = EndoCandidate.build(R, s_img, k=2, name="sigma'")
    sigma_inv = EndoCandidate.build(R, si_img, k=2, name="sigma'^-1")
    tau = EndoCandidate.build(R, t_img, k=2, name="tau'")
    ids: List[Identity] = []

    def record(text, a, b):
        ids.append(Identity(text, R.equal(a, b), str(a), str(b)))

    def zs(k):
        return {0: "", 1: "zeta*", 2: "zeta^2*"}[k % 3]

    for i in idx:
        if not (tau.defined_on(y[i]) and _yname(1 - i) in s_img and _yname(i) in si_img
                and _yname(i - 1) in t_img):
            continue
        k = 1 if i % 2 == 0 else 2
        mid = e(i) * y[1 - i]
        after = sigma(mid)
        # sigma'(tau'(y_i)) = sigma'(zeta^k y_{1-i}) = zeta^{2k} y_{2-i} = tau'(y_{i-1}) = tau'(sigma'^-1(y_i))
        record(f"tau'({_yname(i)}) = {zs(k)}{_yname(1 - i)}", tau(y[i]), mid)
        record(f"sigma'(tau'({_yname(i)})) = sigma'({zs(k)}{_yname(1 - i)})", sigma(tau(y[i])), after)
        record(f"sigma'({zs(k)}{_yname(1 - i)}) = {zs(2 * k)}{_yname(2 - i)}", after,
               (z if (2 * k) % 3 == 1 else z * z) * y[2 - i])
        record(f"{zs(2 * k)}{_yname(2 - i)} = tau'({_yname(i - 1)})",
               (z if (2 * k) % 3 == 1 else z * z) * y[2 - i], tau(y[i - 1]))
        record(f"tau'({_yname(i - 1)}) = tau'(sigma'^-1({_yname(i)}))", tau(y[i - 1]), tau(sigma_inv(y[i])))
        record(f"(tau'({_yname(i)}))^3 = {_yname(1 - i)}^3", tau(y[i]) ** 3, y[1 - i] ** 3)
    # x-level: sigma'(x) = tau'(x) = x + c with tau(c) = -c
    cidx = list(range(lo - 1, hi + 1))
    RX = PresentedRing.build(["x"] + [_cname(k) for k in cidx])
    rx = RX.ring
    X = rx.var("x")
    c = {k: rx.var(_cname(k)) for k in cidx}
    sx = EndoCandidate.build(RX, {"x": X + c[0], **{_cname(k): c[k + 1] for k in cidx if k + 1 in c}}, name="sigma'")
    six = EndoCandidate.build(RX, {"x": X - c[-1], **{_cname(k): c[k - 1] for k in cidx if k - 1 in c}},
                              name="sigma'^-1")
    tx = EndoCandidate.build(RX, {"x": X + c[0], **{_cname(k): -c[-k] for k in cidx if -k in c}}, name="tau'")

    def xn(m):
        if m >= 0:
            return X + sum((c[k] for k in range(m)), rx.zero())
        return X - sum((c[k] for k in range(m, 0)), rx.zero())

    ids.append(Identity("sigma'(tau'(x)) = tau'(sigma'^-1(x))", RX.equal(sx(tx(X)), tx(six(X))),
                        str(sx(tx(X))), str(tx(six(X)))))
    for k in cidx:
        if sx.defined_on(c[k]) and tx.defined_on(c[k]) and six.defined_on(c[k]):
            p, q = c[k], None
            try:
                lhs, q = sx(tx(p)), tx(six(p))
            except ValidationError:
                continue
            ids.append(Identity(f"sigma'(tau'({_cname(k)})) = tau'(sigma'^-1({_cname(k)}))", RX.equal(lhs, q),
                                str(lhs), str(q)))
    for m in idx:
        if lo <= 1 - m <= hi:
            try:
                got = tx(xn(m))
            except ValidationError:
                continue
            ids.append(Identity(f"tau'(x_{m}) = x_{1 - m}", RX.equal(got, xn(1 - m)), str(got), str(xn(1 - m))))
    return ReplayReport("C", {"window": [lo, hi], "mutated": mutate}, ids, {})


def replay_zrtz(scenario: str, n: Optional[int] = None, window: Optional[Sequence[int]] = None,
                mutate: bool = False) -> ReplayReport:
    s = scenario.upper()
    if s == "A":
        return _scenario_a(3 if n is None else int(n), mutate)
    if s == "B":
        return _scenario_b(3 if n is None else int(n), mutate)
    if s == "C":
        lo, hi = window if window is not None else (-3, 4)
        return _scenario_c(int(lo), int(hi), mutate)
    raise ValidationError(f"unknown scenario {scenario!r}", kind="invalid-params")


def maps_from_json(R: PresentedRing, doc: dict) -> Dict[str, EndoCandidate]:
    out = {}
    for name, spec in doc["maps"].items():
        out[name] = EndoCandidate.build(R, spec["images"], int(spec.get("zeta_power", 1)), name=name)
    return out
