"""Compile a validated OTAB tableau into an MLK proof of its root sequent.

Every node ``u`` gets the sequent ``A_u |-m B_u, C_u``; leaves are proved
directly and inner nodes from their children, following the four cases of
the simulation argument.  Subtrees whose leaves are all T-closed are proved
classically as ``A_u |-`` and bridged only where a minimal sequent is needed,
which avoids weakening a minimal sequent with an empty succedent.

All lemma instances go through one :class:`ProofBuilder`, so identical lines
are stored once and the result is a DAG.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .construct import (
    alpha_beta_lines, axiom, bridge, component_lines, conjunction_from_atoms, cut,
    fold_conjunction, intro_disjunction, m_axiom, m_cumulate, m_cut, mlk_weaken_lines,
    prove_assignment_lines, weaken,
)
from .formula import (
    MINIMAL, TOP, Alpha, And, Atom, F, Formula, Not, Sequent, SignedFormula, T, Top,
    canonical, classify, conjoin_atoms, disjoin, variables,
)
from .proof import Proof, ProofBuilder
from .tableau import Tableau, validate_tableau


class TranslationError(ValueError):
    pass


@dataclass
class Annotations:
    A: dict[int, frozenset] = field(default_factory=dict)
    B: dict[int, frozenset] = field(default_factory=dict)
    C: dict[int, frozenset] = field(default_factory=dict)
    D: dict[int, frozenset] = field(default_factory=dict)
    E: dict[int, frozenset] = field(default_factory=dict)
    F: dict[int, frozenset] = field(default_factory=dict)
    omega: dict[int, Formula] = field(default_factory=dict)

    def sequent(self, u: int) -> Sequent:
        return Sequent(self.A[u], self.B[u] | self.C[u], MINIMAL)


def annotate_ab(t: Tableau, ann: Annotations | None = None) -> Annotations:
    """Top-down: A_u and B_u for every node."""
    ann = ann or Annotations()
    A, B = ann.A, ann.B
    A[0], B[0] = t.origin.antecedent, t.origin.succedent
    for node in t.nodes:
        u = node.id
        sf = node.expanded
        if sf is None:
            for c in node.children:
                A.setdefault(c, A[u])
                B.setdefault(c, B[u])
            continue
        comp = classify(sf)
        chi, c1, c2 = sf.formula, comp.first.formula, comp.second.formula
        if node.rule == "A":
            v = node.children[0]
            w = t.nodes[v].children[0]
            if sf.sign == T:
                A[v] = A[w] = (A[u] | {c1, c2}) - {chi}
                B[v] = B[w] = B[u]
            else:
                A[v] = A[w] = A[u]
                B[v] = B[w] = (B[u] | {c1, c2}) - {chi}
        else:
            v, w = node.children
            if sf.sign == T:
                A[v], A[w] = (A[u] | {c1}) - {chi}, (A[u] | {c2}) - {chi}
                B[v] = B[w] = B[u]
            else:
                A[v] = A[w] = A[u]
                B[v], B[w] = (B[u] | {c1}) - {chi}, (B[u] | {c2}) - {chi}
    return ann


def conj_at(t: Tableau, leaf: int) -> Formula:
    return conjoin_atoms(sorted(t.infos[leaf].at))


def annotate_cd(t: Tableau, ann: Annotations | None = None) -> Annotations:
    """Bottom-up: C_u, D_u everywhere; E_u, F_u and omega at binary nodes.

    D holds branches that are images of theta; theta is the identity on them.
    """
    ann = ann or Annotations()
    C, D = ann.C, ann.D
    for node in reversed(t.nodes):
        u = node.id
        if not node.children:
            info = t.infos[u]
            if info.status == "ignorable-2":
                D[u] = frozenset({info.theta})
            else:
                D[u] = frozenset()
        elif len(node.children) == 1:
            D[u] = D[node.children[0]]
        else:
            v, w = node.children
            under_v, under_w = t.subtree_leaves[v], t.subtree_leaves[w]
            D[u] = (D[v] - under_w) | (D[w] - under_v)
            E = (D[v] | D[w]) - D[u]
            if E:
                ann.E[u] = E
                ann.F[u] = frozenset(conj_at(t, b) for b in E)
                ann.omega[u] = disjoin(canonical(ann.F[u]))
        C[u] = frozenset(conj_at(t, b) for b in D[u])
    return ann


def annotate(t: Tableau) -> Annotations:
    return annotate_cd(t, annotate_ab(t))


class Translator:
    def __init__(self, t: Tableau, check_valid: bool = True):
        if check_valid and not validate_tableau(t):
            raise TranslationError("tableau has a branch that is neither closed nor ignorable")
        self.t = t
        self.ann = annotate(t)
        self.b = ProofBuilder()
        self._branch: dict[int, dict] = {}
        self._memo: dict = {}
        self.refutable = {
            u: all(t.infos[leaf].t_closed for leaf in t.subtree_leaves[u])
            for u in range(len(t.nodes))
        }
        self._refutation: dict[int, int] = {}
        self._minimal: dict[int, int] = {}

    # -- branch lemmas ---------------------------------------------------------

    def _branch_data(self, leaf: int) -> dict:
        if leaf not in self._branch:
            t = self.t
            path = t.path(leaf)
            on_path = set(path)
            exps: dict[SignedFormula, tuple[SignedFormula, ...]] = {}
            for x in path:
                node = t.nodes[x]
                if node.expanded is None:
                    continue
                comp = classify(node.expanded)
                if node.rule == "A":
                    exps[node.expanded] = (comp.first, comp.second)
                else:
                    v, _ = node.children
                    exps[node.expanded] = (comp.first,) if v in on_path else (comp.second,)
            a, bb = t.unmarked(leaf)
            self._branch[leaf] = dict(A=a, B=bb, exps=exps, labels=t.labels(leaf))
        return self._branch[leaf]

    def t_lemma(self, leaf: int, phi: Formula) -> int:
        """``A(B) |- phi`` for ``T phi`` on the branch."""
        key = ("T", leaf, phi)
        if key in self._memo:
            return self._memo[key]
        data = self._branch_data(leaf)
        sf = SignedFormula(T, phi)
        if sf not in data["labels"]:
            raise TranslationError(f"{sf} is not on branch {leaf}")
        b = self.b
        if phi in data["A"]:
            out = weaken(b, axiom(b, phi), data["A"])
        else:
            comps = data["exps"][sf]
            _, back = alpha_beta_lines(b, sf)
            combo = b.sequent(back).antecedent
            (combo,) = combo
            if isinstance(classify(sf), Alpha):
                p1, p2 = (self.t_lemma(leaf, c.formula) for c in comps)
                c1, c2 = (c.formula for c in comps)
                mid = b.add("and-r", [p1, p2], [c1, c2])
            else:
                (c,) = comps
                mid = self.t_lemma(leaf, c.formula)
                first = c == classify(sf).first
                mid = intro_disjunction(b, mid, combo, c.formula) if first else \
                    b.add("or-r2", [mid], [combo.right, combo.left])
            out = cut(b, weaken(b, mid, suc=[phi]), weaken(b, back, data["A"]), combo)
        self._memo[key] = out
        return out

    def f_lemma(self, leaf: int, phi: Formula) -> int:
        """``phi |- B(B)`` for ``F phi`` on the branch."""
        key = ("F", leaf, phi)
        if key in self._memo:
            return self._memo[key]
        data = self._branch_data(leaf)
        sf = SignedFormula(F, phi)
        if sf not in data["labels"]:
            raise TranslationError(f"{sf} is not on branch {leaf}")
        b = self.b
        bset = data["B"]
        if phi in bset:
            out = weaken(b, axiom(b, phi), suc=bset)
        else:
            comps = data["exps"][sf]
            fwd, _ = alpha_beta_lines(b, sf)
            (combo,) = b.sequent(fwd).succedent
            if isinstance(classify(sf), Alpha):
                p1, p2 = (self.f_lemma(leaf, c.formula) for c in comps)
                mid = b.add("or-l", [p1, p2], [combo.left, combo.right], Sequent({combo}, bset))
            else:
                (c,) = comps
                p = self.f_lemma(leaf, c.formula)
                if c == classify(sf).first:
                    mid = b.add("and-l1", [p], [combo.left, combo.right], Sequent({combo}, bset))
                else:
                    mid = b.add("and-l2", [p], [combo.right, combo.left], Sequent({combo}, bset))
            out = cut(b, weaken(b, fwd, suc=bset), weaken(b, mid, ant=[phi]), combo)
        self._memo[key] = out
        return out

    # -- omega lemmas ----------------------------------------------------------------

    def _omega_left(self, u: int) -> int:
        """``omega |- F_u``."""
        key = ("omega-left", u)
        if key not in self._memo:
            b, fs, omega = self.b, self.ann.F[u], self.ann.omega[u]

            def go(f: Formula) -> int:
                if f in fs:
                    return weaken(b, axiom(b, f), suc=fs)
                return b.add("or-l", [go(f.left), go(f.right)], [f.left, f.right], Sequent({f}, fs))

            self._memo[key] = go(omega)
        return self._memo[key]

    def _implies_omega(self, u: int, f: Formula) -> int:
        """``f |- omega`` for a disjunct ``f`` of omega."""
        b = self.b
        return intro_disjunction(b, axiom(b, f), self.ann.omega[u], f)

    def _negations(self, f: Formula, atoms_out: list[str]) -> tuple[Formula, int]:
        """``n(M)`` and a proof of ``f |-m n(M)`` where ``f`` is the conjunction of M."""
        b = self.b
        if not atoms_out:
            return TOP, bridge(b, weaken(b, b.add("top-r"), [f]))
        parts = [m_axiom(b, [f], a) for a in atoms_out]
        line, conj = parts[0], Not(Atom(atoms_out[0]))
        for a, part in zip(atoms_out[1:], parts[1:]):
            nxt = Not(Atom(a))
            line = b.add("m-and-r", [line, part], [conj, nxt])
            conj = And(conj, nxt)
        return conj, line

    def _fold(self, i: int, conj: Formula) -> int:
        if isinstance(conj, Top):
            return weaken(self.b, i, [conj])
        return fold_conjunction(self.b, i, conj)

    def _omega_f(self, u: int, f: Formula, model: frozenset, goal: frozenset) -> int:
        """``omega, f |-m goal`` where f is the conjunction of the atoms of ``model``."""
        key = ("omega-f", u, f, goal)
        if key in self._memo:
            return self._memo[key]
        b = self.b
        omega = self.ann.omega[u]
        neg = sorted(variables(goal) - model)
        n_m, f_nm = self._negations(f, neg)
        f_omega = bridge(b, self._implies_omega(u, f))
        lemma = m_cumulate(b, f_omega, f_nm)  # omega, f |-m n(M)
        i = prove_assignment_lines(b, model, neg, (), goal)
        i = self._fold(self._fold(i, f), n_m)
        main = bridge(b, weaken(b, i, [omega]))  # omega, f, n(M) |-m goal
        out = m_cut(b, lemma, main, n_m)
        self._memo[key] = out
        return out

    def _omega_base(self, u: int, goal: frozenset) -> int:
        """``omega |-m goal``, cutting each element of F_u."""
        key = ("omega-base", u, goal)
        if key in self._memo:
            return self._memo[key]
        b = self.b
        line = bridge(b, weaken(b, self._omega_left(u), suc=goal))
        for leaf in sorted(self.ann.E[u]):
            f = conj_at(self.t, leaf)
            if f not in b.sequent(line).succedent:
                continue
            side = self._omega_f(u, f, self.t.infos[leaf].at, goal)
            line = m_cut(b, line, side, f)
        self._memo[key] = line
        return line

    def omega_gamma_table(self, u: int, order: tuple[Formula, ...]) -> list[dict[Formula, int]]:
        """Row j maps each later gamma to a proof of ``order[:j], omega |-m gamma``."""
        key = ("omega-gamma", u, order)
        if key in self._memo:
            return self._memo[key]
        rows = [{g: self._omega_base(u, frozenset({g})) for g in order}]
        for j, gj in enumerate(order[:-1]):
            prev = rows[-1]
            rows.append({g: m_cumulate(self.b, prev[gj], prev[g]) for g in order[j + 1:]})
        self._memo[key] = rows
        return rows

    def omega_gamma(self, u: int, aprime: frozenset, gamma: Formula) -> int:
        au = self.ann.A[u]
        if u not in self.ann.omega:
            raise TranslationError(f"node {u} has no omega")
        if not aprime < au or gamma not in au - aprime:
            raise TranslationError("need a proper subset A' of A_u and gamma in A_u minus A'")
        order = tuple(canonical(aprime)) + tuple(canonical(au - aprime))
        return self.omega_gamma_table(u, order)[len(aprime)][gamma]

    def omega_b(self, u: int) -> int:
        """``A_u, omega |-m B_u``."""
        key = ("omega-B", u)
        if key in self._memo:
            return self._memo[key]
        if u not in self.ann.omega:
            raise TranslationError(f"node {u} has no omega")
        b = self.b
        order = tuple(canonical(self.ann.A[u]))
        line = self._omega_base(u, self.ann.B[u])
        if order:
            table = self.omega_gamma_table(u, order)
            for j, gj in enumerate(order):
                line = m_cumulate(b, table[j][gj], line)
        self._memo[key] = line
        return line

    # -- the main induction --------------------------------------------------------------

    def _child_minimal(self, c: int, succ: frozenset) -> int:
        """``A_c |-m succ`` for a superset ``succ`` of the child's succedent."""
        b = self.b
        if self.refutable[c]:
            return bridge(b, weaken(b, self._refutation[c], suc=succ))
        line = self._minimal[c]
        return mlk_weaken_lines(b, line, succ - b.sequent(line).succedent)

    def _to_omega(self, line: int, u: int, keep: frozenset) -> int:
        """Replace the elements of F_u in the succedent by omega."""
        b = self.b
        ant = b.sequent(line).antecedent
        for f in canonical(self.ann.F[u]):
            side = bridge(b, weaken(b, self._implies_omega(u, f), ant))
            line = m_cut(b, line, side, f, keep)
        return line

    def _leaf_refutation(self, u: int) -> int:
        b = self.b
        data = self._branch_data(u)
        if data["A"] != self.ann.A[u]:
            raise TranslationError(f"annotation of leaf {u} disagrees with the branch")
        ts = {sf.formula for sf in data["labels"] if sf.sign == T}
        phi = next(f for f in canonical(ts) if Not(f) in ts)
        pos, neg = self.t_lemma(u, phi), self.t_lemma(u, Not(phi))
        return cut(b, neg, b.add("not-l", [pos], [phi]), Not(phi))

    def _refute(self, u: int) -> int:
        """``A_u |-`` for a node whose leaves are all T-closed."""
        t, b, A = self.t, self.b, self.ann.A
        node = t.nodes[u]
        if not node.children:
            return self._leaf_refutation(u)
        if node.expanded is None:
            return self._refutation[node.children[0]]
        sf = node.expanded
        phi = sf.formula
        if sf.sign != T:
            return self._refutation[node.children[0]]
        comp = classify(sf)
        if node.rule == "A":
            v = node.children[0]
            line = weaken(b, self._refutation[v], [phi])
            first, second = component_lines(b, sf)
            for x, lemma in ((comp.first.formula, first), (comp.second.formula, second)):
                ant = b.sequent(line).antecedent
                if x in A[u] or x not in ant:
                    continue
                line = cut(b, weaken(b, lemma, ant - {x}), line, x)
            return line
        v, w = node.children
        fwd, back = alpha_beta_lines(b, sf)
        (combo,) = b.sequent(fwd).succedent
        rest = A[u] - {phi}
        line = b.add("or-l", [self._refutation[v], self._refutation[w]],
                     [combo.left, combo.right], Sequent(rest | {combo}, ()))
        line = weaken(b, line, [phi])
        return cut(b, weaken(b, fwd, A[u]), line, combo)

    def _leaf_minimal(self, u: int) -> int:
        b, ann = self.b, self.ann
        info = self.t.infos[u]
        data = self._branch_data(u)
        au, bu = ann.A[u], ann.B[u]
        if (au, bu) != (data["A"], data["B"]):
            raise TranslationError(f"annotation of leaf {u} disagrees with the branch")
        status = info.status
        labels = data["labels"]
        if status == "F-closed":
            fs = {sf.formula for sf in labels if sf.sign != T}
            phi = next(f for f in canonical(fs) if Not(f) in fs)
            pos = b.add("not-r", [self.f_lemma(u, phi)], [phi])
            line = cut(b, pos, self.f_lemma(u, Not(phi)), Not(phi))
            return bridge(b, weaken(b, line, au))
        if status == "TF-closed":
            ts = {sf.formula for sf in labels if sf.sign == T}
            fs = {sf.formula for sf in labels if sf.sign != T}
            phi = canonical(ts & fs)[0]
            left = weaken(b, self.t_lemma(u, phi), suc=bu)
            right = weaken(b, self.f_lemma(u, phi), au)
            return bridge(b, cut(b, left, right, phi))
        if status == "ignorable-1":
            a = next(f.child.name for f in canonical(bu)
                     if isinstance(f, Not) and isinstance(f.child, Atom) and f.child.name not in info.at)
            return mlk_weaken_lines(b, m_axiom(b, au, a), bu)
        if status == "ignorable-2":
            (c,) = ann.C[u]
            return bridge(b, weaken(b, conjunction_from_atoms(b, au, c), suc=bu))
        raise TranslationError(f"leaf {u} has status {status}")

    def _inner_minimal(self, u: int) -> int:
        t, b, ann = self.t, self.b, self.ann
        node = t.nodes[u]
        if node.expanded is None:
            return self._minimal[node.children[0]]
        sf = node.expanded
        phi = sf.formula
        comp = classify(sf)
        c1, c2 = comp.first.formula, comp.second.formula
        au, bu, cu = ann.A[u], ann.B[u], ann.C[u]
        s = bu | cu
        fwd, back = alpha_beta_lines(b, sf)
        (combo,) = b.sequent(fwd).succedent

        if node.rule == "A" and sf.sign == T:  # case 1
            v = node.children[0]
            av = ann.A[v]
            both = weaken(b, axiom(b, c1), [c2]), weaken(b, axiom(b, c2), [c1])
            conj = b.add("and-r", list(both), [c1, c2])
            entail = cut(b, weaken(b, conj, suc=[phi]), weaken(b, back, [c1, c2]), combo)
            line = m_cumulate(b, bridge(b, weaken(b, entail, av)), self._minimal[v])
            first, second = component_lines(b, sf)
            for x, lemma in ((c1, first), (c2, second)):
                ant = b.sequent(line).antecedent
                if x in au or x not in ant:
                    continue
                side = bridge(b, weaken(b, lemma, ant - {x}))
                line = m_cut(b, side, line, x)
            return line

        if node.rule == "A":  # case 2
            line = self._minimal[node.children[0]]
            keep = s
            for x in dict.fromkeys((c1, c2)):
                intro = intro_disjunction(b, axiom(b, x), combo, x)
                side = bridge(b, weaken(b, intro, au))
                line = m_cut(b, line, side, x, keep)
            side = bridge(b, weaken(b, back, au))
            return m_cut(b, line, side, combo, keep)

        v, w = node.children
        omega = ann.omega.get(u)
        extra = ann.F[u] if omega is not None else frozenset()
        top = s | ({omega} if omega is not None else set())

        if sf.sign == T:  # case 3
            lines = []
            for c in (v, w):
                line = self._child_minimal(c, s | extra)
                if omega is not None:
                    line = self._to_omega(line, u, top)
                lines.append(line)
            rest = au - {phi}
            line = b.add("m-or-l", lines, [combo.left, combo.right],
                         Sequent(rest | {combo}, top, MINIMAL))
            line = m_cumulate(b, bridge(b, weaken(b, back, rest)), line)
            line = m_cut(b, bridge(b, weaken(b, fwd, au)), line, combo, top)
        else:  # case 4
            lines = []
            for c in (v, w):
                target = ann.B[c] | cu
                line = self._child_minimal(c, target | extra)
                if omega is not None:
                    line = self._to_omega(line, u, target | {omega})
                lines.append(line)
            succ = (bu - {phi}) | cu | (top - s) | {combo}
            line = b.add("m-and-r", lines, [combo.left, combo.right], Sequent(au, succ, MINIMAL))
            side = bridge(b, weaken(b, back, au))
            line = m_cut(b, line, side, combo, top)
        if omega is None:
            return line
        lemma = mlk_weaken_lines(b, self.omega_b(u), cu)
        return m_cut(b, line, lemma, omega, s)

    def run(self) -> int:
        for node in reversed(self.t.nodes):
            u = node.id
            if self.refutable[u]:
                self._refutation[u] = self._refute(u)
            elif node.children:
                self._minimal[u] = self._inner_minimal(u)
            else:
                self._minimal[u] = self._leaf_minimal(u)
        return self.minimal(0)

    def minimal(self, u: int) -> int:
        """Line proving ``A_u |-m B_u, C_u`` (after :meth:`run`)."""
        if self.refutable[u]:
            b = self.b
            return bridge(b, weaken(b, self._refutation[u], suc=self.ann.B[u] | self.ann.C[u]))
        return self._minimal[u]


def translate(t: Tableau) -> Proof:
    """MLK proof of the tableau's root sequent."""
    tr = Translator(t)
    line = tr.run()
    proof = tr.b.proof(line)
    if proof.sequent != t.origin:
        raise TranslationError(f"translation ended in {proof.sequent}, expected {t.origin}")
    return proof


def prove_branch_formula(t: Tableau, leaf: int, node: int) -> Proof:
    """``A(B) |- phi`` for a node ``T phi`` or ``phi |- B(B)`` for ``F phi`` on the branch."""
    if not t.on_branch(node, leaf):
        raise TranslationError(f"node {node} is not on branch {leaf}")
    sf = t.nodes[node].label
    if sf is None:
        raise TranslationError("the root carries no formula")
    tr = Translator(t, check_valid=False)
    line = tr.t_lemma(leaf, sf.formula) if sf.sign == T else tr.f_lemma(leaf, sf.formula)
    return tr.b.proof(line)


def prove_omega_gamma(t: Tableau, u: int, aprime, gamma: Formula) -> Proof:
    tr = Translator(t)
    return tr.b.proof(tr.omega_gamma(u, frozenset(aprime), gamma))


def prove_omega_B(t: Tableau, u: int) -> Proof:
    tr = Translator(t)
    return tr.b.proof(tr.omega_b(u))
