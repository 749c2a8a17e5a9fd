"""Random typed terms, executable meta-theorem checkers and property suites."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional

from . import config
from .measures import measure_M, potential_P
from .parser import parse_term
from .printer import show_term
from .reduction import FuelExhausted, ReductionCycle, ReductionGraph, normalize_all, red_modulo
from .syntax import App, Atom, Lam, Proj, Sum, Term, Var, children, replace_at, size, subst_term, summands
from .term_equiv import ClassTooLarge, ac_norm, canon_term, enumerate_class, equiv_step
from .type_canon import (
    apply_type, arrow, arrows, canon_type, conj, conj_list, leaves, proj_ok, qlex, split_cf,
)
from .typing import type_of


@dataclass
class GenConfig:
    max_depth: int = 5
    atom_alphabet: list = field(default_factory=lambda: ["T1", "T2", "T3"])
    seed: int = 0
    sum_bias: float = 1.0
    app_bias: float = 1.0
    lam_bias: float = 1.0
    proj_bias: float = 1.0
    var_bias: float = 1.5
    max_size: int = 16

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        weights = (self.sum_bias, self.app_bias, self.lam_bias, self.proj_bias, self.var_bias)
        if min(weights) <= 0:
            raise ValueError("generator weights must be positive")


# ---------------------------------------------------------------- inhabitation


def prove(goal, env: list, fuel: int = 4, names=None) -> Optional[Term]:
    """A small term of canonical type ``goal`` built from ``env``.

    ``env`` is a list of (name, canonical type).  Plain proof search for
    implication and conjunction, bounded by ``fuel``.
    """
    names = names or _Names()
    parts = []
    for cf in leaves(goal):
        t = _prove_cf(cf, env, fuel, names)
        if t is None:
            return None
        parts.append(t)
    out = parts[0]
    for p in parts[1:]:
        out = Sum(out, p)
    return out


def _prove_cf(cf, env, fuel, names) -> Optional[Term]:
    args, head = split_cf(cf)
    inner = list(env)
    binders = []
    for a in args:
        x = names.fresh()
        binders.append((x, a))
        inner.append((x, a))
    body = _prove_atom(head, inner, fuel, names)
    if body is None:
        return None
    for x, a in reversed(binders):
        body = Lam(x, a, body)
    return body


def _prove_atom(head, env, fuel, names) -> Optional[Term]:
    if fuel <= 0:
        return None
    for name, ty in reversed(env):
        for cf in leaves(ty):
            args, h = split_cf(cf)
            if h != head:
                continue
            fn = Var(name, ty)
            if ty != cf:
                fn = Proj(cf, fn)
            ok = True
            for a in args:
                sub = _prove_cf(a, env, fuel - 1, names)
                if sub is None:
                    ok = False
                    break
                fn = App(fn, sub)
            if ok:
                return fn
    return None


class _Names:
    def __init__(self, prefix: str = "v"):
        self.n = 0
        self.prefix = prefix

    def fresh(self) -> str:
        self.n += 1
        return f"{self.prefix}{self.n}"


# ---------------------------------------------------------------- generator


class _Gen:
    def __init__(self, cfg: GenConfig, rng: random.Random):
        self.cfg = cfg
        self.rng = rng
        self.names = _Names()
        self.atoms = [Atom(a) for a in cfg.atom_alphabet]

    def rand_type(self, depth: int):
        r = self.rng.random()
        if depth <= 0 or r < 0.45:
            return self.rng.choice(self.atoms)
        if r < 0.8:
            return canon_type(arrow(self.rand_type(depth - 1), self.rand_type(depth - 1)))
        return conj(self.rand_type(depth - 1), self.rand_type(depth - 1))

    def term(self, goal, env: list, depth: int) -> Optional[Term]:
        if depth <= 0:
            return prove(goal, env, names=self.names)
        cfg = self.cfg
        moves = [("var", cfg.var_bias), ("app", cfg.app_bias), ("proj", cfg.proj_bias)]
        if len(leaves(goal)) > 1:
            moves.append(("sum", cfg.sum_bias * 2))
        if _common_args(goal):
            moves.append(("lam", cfg.lam_bias * 2))
        tried = set()
        while len(tried) < len(moves):
            pool = [(m, w) for m, w in moves if m not in tried]
            total = sum(w for _, w in pool)
            r = self.rng.random() * total
            for m, w in pool:
                r -= w
                if r <= 0:
                    break
            tried.add(m)
            out = getattr(self, "move_" + m)(goal, env, depth)
            if out is not None:
                return out
        return prove(goal, env, names=self.names)

    def move_sum(self, goal, env, depth):
        ls = leaves(goal)
        self.rng.shuffle(ls)
        k = self.rng.randint(1, len(ls) - 1)
        a = self.term(conj_list(sorted(ls[:k], key=qlex)), env, depth - 1)
        b = self.term(conj_list(sorted(ls[k:], key=qlex)), env, depth - 1) if a is not None else None
        return Sum(a, b) if b is not None else None

    def move_lam(self, goal, env, depth):
        common = _common_args(goal)
        k = 1 if len(common) == 1 or self.rng.random() < 0.7 else 2
        chosen = self.rng.sample(common, k)
        dom = conj_list(sorted(chosen, key=qlex))
        body_ty = apply_type(goal, dom)
        x = self.names.fresh()
        body = self.term(body_ty, env + [(x, dom)], depth - 1)
        return Lam(x, dom, body) if body is not None else None

    def move_app(self, goal, env, depth):
        cands = [t for _, t in env] + [self.rand_type(1) for _ in range(2)]
        dom = self.rng.choice(cands)
        if self.rng.random() < 0.3:
            dom = conj(dom, self.rand_type(0))
        arg = self.term(dom, env, depth - 1)
        if arg is None:
            return None
        fun = self.term(arrow(dom, goal), env, depth - 1)
        return App(fun, arg) if fun is not None else None

    def move_proj(self, goal, env, depth):
        extra = self.rand_type(1)
        body = self.term(conj(goal, extra), env, depth - 1)
        return Proj(goal, body) if body is not None else None

    def move_var(self, goal, env, depth):
        opts = []
        for name, ty in env:
            if ty == goal:
                opts.append(Var(name, ty))
            elif proj_ok(goal, ty):
                opts.append(Proj(goal, Var(name, ty)))
            else:
                for cf in leaves(ty):
                    args, head = split_cf(cf)
                    if len(leaves(goal)) == 1 and split_cf(goal)[1] == head and args:
                        rest = _minus_list(args, split_cf(goal)[0])
                        if rest:
                            fn = Var(name, ty) if ty == cf else Proj(cf, Var(name, ty))
                            opts.append((fn, conj_list(sorted(rest, key=qlex))))
        if not opts:
            return None
        pick = self.rng.choice(opts)
        if isinstance(pick, tuple):
            fn, dom = pick
            arg = self.term(dom, env, depth - 1)
            return App(fn, arg) if arg is not None else None
        return pick


def _minus_list(big, small):
    rest = list(big)
    for x in small:
        if x in rest:
            rest.remove(x)
        else:
            return None
    return rest


def _common_args(goal) -> list:
    """Arguments shared by every conjunct (with multiplicity)."""
    ls = leaves(goal)
    common = split_cf(ls[0])[0]
    for cf in ls[1:]:
        args = list(split_cf(cf)[0])
        keep = []
        for a in common:
            if a in args:
                args.remove(a)
                keep.append(a)
        common = keep
    return common


def gen_typed_term(cfg: GenConfig) -> Term:
    """A closed typable term, deterministic in cfg.seed."""
    rng = random.Random(cfg.seed)
    g = _Gen(cfg, rng)
    for _ in range(200):
        goal = g.rand_type(2)
        if prove(goal, []) is None:
            continue
        t = g.term(goal, [], rng.randint(1, cfg.max_depth))
        if t is None or size(t) > cfg.max_size:
            continue
        t = canon_term(t)
        if type_of(t) is not None:
            return t
    raise RuntimeError("generator could not produce a term")


def gen_open_term(cfg: GenConfig, env: list, goal) -> Optional[Term]:
    g = _Gen(cfg, random.Random(cfg.seed))
    return g.term(goal, env, cfg.max_depth)


# ---------------------------------------------------------------- checkers


@dataclass
class SnReport:
    terminated: bool
    ns: int
    nf_count: int
    error: str = ""


def check_sn(t: Term, fuel: Optional[int] = None) -> SnReport:
    g = ReductionGraph(fuel)
    try:
        nfs = g.normal_forms(t)
        ns = g.longest(t)
    except (FuelExhausted, ReductionCycle, ClassTooLarge) as e:
        return SnReport(False, -1, 0, f"{type(e).__name__}: {e}")
    return SnReport(True, ns, len(nfs))


@dataclass
class CsnShape:
    lambda_group: list  # (binder type, body)
    stuck_group: list  # (binder type, body, argument)
    witness: Term

    def __post_init__(self):
        assert len(self.lambda_group) + len(self.stuck_group) >= 1


def _stuck(u: Term) -> bool:
    if not (isinstance(u, App) and isinstance(u.fun, Lam)):
        return False
    ta = type_of(u.arg)
    dom = canon_type(u.fun.ann)
    return ta is not None and ta != dom and proj_ok(ta, dom)


def check_csn(t: Term) -> Optional[CsnShape]:
    """A member of t's class of the form Σ λx.s + Σ (λx^{B∧C}.r) t, if any."""
    for m in enumerate_class(t).members:
        lams, stuck = [], []
        for part in summands(m):
            if isinstance(part, Lam):
                lams.append((part.ann, part.body))
            elif _stuck(part):
                stuck.append((part.fun.ann, part.fun.body, part.arg))
            else:
                break
        else:
            return CsnShape(lams, stuck, m)
    return None


def check_redpi(t: Term, a) -> bool:
    """Every maximal ⇝ path from π_a(t) contains a πₙ step."""
    g = ReductionGraph()
    return not g.avoids(Proj(canon_type(a), t), "pi_n")


# ---------------------------------------------------------------- property suites

SUITES = (
    "subject_reduction", "m_invariance", "p_invariance", "class_finiteness",
    "sn", "csn", "redpi", "substitution_lemma", "unicity",
)


@dataclass
class Failure:
    term: Term
    detail: str
    shrunk: Optional[Term] = None

    def describe(self) -> str:
        shown = show_term(self.shrunk if self.shrunk is not None else self.term)
        return f"{shown}: {self.detail}"


@dataclass
class SuiteReport:
    name: str
    trials: int
    failures: list
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def _trial_cfg(seed: int, i: int, base: Optional[GenConfig]) -> GenConfig:
    base = base or GenConfig()
    return GenConfig(
        max_depth=base.max_depth, atom_alphabet=base.atom_alphabet, seed=seed * 1_000_003 + i,
        sum_bias=base.sum_bias, app_bias=base.app_bias, lam_bias=base.lam_bias,
        proj_bias=base.proj_bias, var_bias=base.var_bias, max_size=base.max_size,
    )


def prop_subject_reduction(t: Term) -> Optional[str]:
    ty = type_of(t)
    for st in equiv_step(t):
        if type_of(st.result) != ty:
            return f"{st.rule} {st.direction} at {st.position} changes the type"
    for s in red_modulo(t):
        if type_of(s) != ty:
            return f"reduct {show_term(s)} changes the type"
    return None


def prop_m_invariance(t: Term) -> Optional[str]:
    m = measure_M(t)
    for st in equiv_step(t):
        if measure_M(st.result) != m:
            return f"{st.rule} {st.direction} at {st.position}: M {m} -> {measure_M(st.result)}"
    return None


def prop_p_invariance(t: Term) -> Optional[str]:
    p = potential_P(t)
    for st in equiv_step(t):
        if potential_P(st.result) != p:
            return f"{st.rule} {st.direction} at {st.position}: P {p} -> {potential_P(st.result)}"
    return None


def prop_class_finiteness(t: Term) -> Optional[str]:
    try:
        cls = enumerate_class(t)
    except ClassTooLarge as e:
        return str(e)
    m = measure_M(t)
    ty = type_of(t)
    for member in cls.members:
        if measure_M(member) != m:
            return f"member {show_term(member)} has M {measure_M(member)} instead of {m}"
        if type_of(member) != ty:
            return f"member {show_term(member)} has another type"
        if member.fv != ac_norm(t).fv:
            return f"member {show_term(member)} has other free variables"
    return None


def prop_sn(t: Term) -> Optional[str]:
    rep = check_sn(t)
    return None if rep.terminated else rep.error


def prop_csn(t: Term) -> Optional[str]:
    for nf in normalize_all(t):
        if check_csn(nf) is None:
            return f"normal form {show_term(nf)} has no CSN-shaped member"
    return None


def prop_unicity(t: Term) -> Optional[str]:
    ty = type_of(t)
    again = parse_term(show_term(t))
    if type_of(again) != ty:
        return "printing and re-parsing changes the type"
    for m in enumerate_class(t).members:
        if type_of(m) != ty:
            return f"class member {show_term(m)} has another type"
    return None


_PROPS: dict = {
    "subject_reduction": prop_subject_reduction,
    "m_invariance": prop_m_invariance,
    "p_invariance": prop_p_invariance,
    "class_finiteness": prop_class_finiteness,
    "sn": prop_sn,
    "csn": prop_csn,
    "unicity": prop_unicity,
}


def _redpi_instance(cfg: GenConfig):
    """A closed term of conjunctive type and a strict part of its type."""
    rng = random.Random(cfg.seed)
    for k in range(200):
        t = gen_typed_term(_trial_cfg(cfg.seed, k, cfg))
        ls = leaves(type_of(t))
        if len(ls) < 2:
            continue
        n = rng.randint(1, len(ls) - 1)
        part = conj_list(sorted(rng.sample(ls, n), key=qlex))
        return t, part
    return None


def _subst_instance(cfg: GenConfig):
    rng = random.Random(cfg.seed)
    g = _Gen(cfg, rng)
    for _ in range(200):
        b = g.rand_type(1)
        s = prove(b, [])
        if s is None:
            continue
        s = g.term(b, [], 2) or s
        a = g.rand_type(2)
        r = g.term(a, [("xs", b)], rng.randint(1, cfg.max_depth - 1))
        if r is None or type_of(r) is None or size(r) > cfg.max_size:
            continue
        return r, s
    return None


def shrink(t: Term, still_fails: Callable[[Term], bool], rounds: int = 30) -> Term:
    """Replace subterms by smaller ones of the same type while the failure persists."""
    for _ in range(rounds):
        improved = False
        for path, u, env in _positions_env(t):
            ty = type_of(u)
            if ty is None:
                continue
            cands = [c for c in children(u) if type_of(c) == ty]
            small = prove(ty, env)
            if small is not None:
                cands.append(small)
            for c in cands:
                cand = canon_term(replace_at(t, path, c))
                if size(cand) >= size(t) or type_of(cand) is None:
                    continue
                try:
                    bad = still_fails(cand)
                except Exception:
                    bad = False
                if bad:
                    t = cand
                    improved = True
                    break
            if improved:
                break
        if not improved:
            return t
    return t


def _positions_env(t: Term, path=(), env=()):
    yield path, t, list(env)
    if isinstance(t, Lam):
        yield from _positions_env(t.body, path + (0,), env + ((t.binder, canon_type(t.ann)),))
        return
    for i, c in enumerate(children(t)):
        yield from _positions_env(c, path + (i,), env)


def run_property_suite(name: str, trials: int, seed: int, cfg: Optional[GenConfig] = None) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    failures = []
    for i in range(trials):
        _bound_caches()
        tc = _trial_cfg(seed, i, cfg)
        if name == "redpi":
            inst = _redpi_instance(tc)
            if inst is None:
                continue
            t, part = inst
            try:
                ok = check_redpi(t, part)
            except (FuelExhausted, ReductionCycle, ClassTooLarge) as e:
                failures.append(Failure(Proj(part, t), f"{type(e).__name__}: {e}"))
                continue
            if not ok:
                shrunk = shrink(t, lambda u: not check_redpi(u, part))
                failures.append(Failure(Proj(part, t), "a maximal path avoids pi_n", Proj(part, shrunk)))
            continue
        if name == "substitution_lemma":
            inst = _subst_instance(tc)
            if inst is None:
                continue
            r, s = inst
            res = subst_term(r, s, "xs")
            if type_of(res) != type_of(r):
                failures.append(Failure(r, f"substituting {show_term(s)} changes the type"))
            continue
        t = gen_typed_term(tc)
        prop = _PROPS[name]
        try:
            detail = prop(t)
        except (FuelExhausted, ReductionCycle, ClassTooLarge) as e:
            detail = f"{type(e).__name__}: {e}"
        if detail is not None:
            failures.append(Failure(t, detail, shrink(t, lambda u: _fails(prop, u))))
    return SuiteReport(name, trials, failures, trials)


def _bound_caches(limit: int = 100_000) -> None:
    """Drop memoised classes between trials once they grow past ``limit``."""
    from . import reduction, term_equiv

    if len(term_equiv._REGISTRY) > limit:
        term_equiv.clear_caches()
        reduction.clear_caches()


def _fails(prop, t) -> bool:
    try:
        return prop(t) is not None
    except (FuelExhausted, ReductionCycle, ClassTooLarge):
        return True
