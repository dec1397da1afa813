"""LTL semantics on ultimately periodic words, used as the test oracle.

Three evaluators live here:

* ``eval_at`` computes exact truth vectors per subformula over the
  normalized positions of a lasso (fixpoints for U/R/W/G/F).
* ``naive_eval`` follows the textbook clauses on an explicitly unrolled
  word and shares no code with ``eval_at``.
* ``bounded_equiv`` checks two formulas on every lasso with bounded prefix
  and loop.  It runs a vectorised version of the ``eval_at`` fixpoints over
  all loops at once and then extends prefixes backwards one letter at a
  time, deduplicating subformula valuations.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np


@dataclass(frozen=True)
class LassoWord:
    alphabet: frozenset
    prefix: tuple
    loop: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "prefix", tuple(frozenset(x) for x in self.prefix))
        object.__setattr__(self, "loop", tuple(frozenset(x) for x in self.loop))
        if not self.loop:
            raise ValueError("the loop of a lasso word must be nonempty")
        for letter in self.prefix + self.loop:
            if not letter <= self.alphabet:
                raise ValueError(f"letter {set(letter)} is not over the alphabet")

    def __len__(self):
        return len(self.prefix) + len(self.loop)

    def letter(self, i):
        p = len(self.prefix)
        if i < p:
            return self.prefix[i]
        return self.loop[(i - p) % len(self.loop)]

    def normalize(self, i):
        p = len(self.prefix)
        return i if i < p else p + (i - p) % len(self.loop)

    def __str__(self):
        show = lambda xs: " ".join("{" + ",".join(sorted(x)) + "}" for x in xs)
        return f"{show(self.prefix)} ({show(self.loop)})^w".strip()


def _check_atoms(word, formula):
    missing = formula.atoms() - word.alphabet
    if missing:
        raise ValueError(f"atoms not in alphabet: {sorted(missing)}")


def truth_vectors(word, formula):
    """Map each subformula to its list of truth values at normalized positions."""
    _check_atoms(word, formula)
    n = len(word)
    p = len(word.prefix)
    succ = [i + 1 if i + 1 < n else p for i in range(n)]
    letters = [word.letter(i) for i in range(n)]
    table = {}
    for f in formula.subformulas():
        op = f.op
        if op == "true":
            v = [True] * n
        elif op == "false":
            v = [False] * n
        elif op == "atom":
            v = [f.name in letters[i] for i in range(n)]
        elif op == "!":
            v = [not x for x in table[f.args[0]]]
        elif op in ("&&", "||", "->", "<->"):
            a, b = table[f.args[0]], table[f.args[1]]
            fn = {"&&": lambda x, y: x and y, "||": lambda x, y: x or y,
                  "->": lambda x, y: (not x) or y, "<->": lambda x, y: x == y}[op]
            v = [fn(x, y) for x, y in zip(a, b)]
        elif op == "X":
            a = table[f.args[0]]
            v = [a[succ[i]] for i in range(n)]
        else:
            v = _fixpoint(op, f, table, succ, n)
        table[f] = v
    return table


def _fixpoint(op, f, table, succ, n):
    if op in ("G", "F"):
        a = table[f.args[0]]
        b = None
    else:
        a, b = table[f.args[0]], table[f.args[1]]
    greatest = op in ("G", "R", "W")
    v = [greatest] * n
    changed = True
    while changed:
        changed = False
        for i in reversed(range(n)):
            nxt = v[succ[i]]
            if op == "G":
                new = a[i] and nxt
            elif op == "F":
                new = a[i] or nxt
            elif op in ("U", "W"):
                new = b[i] or (a[i] and nxt)
            else:  # R
                new = b[i] and (a[i] or nxt)
            if new != v[i]:
                v[i] = new
                changed = True
    return v


def eval_at(word, formula, position=0):
    return truth_vectors(word, formula)[formula][word.normalize(position)]


def naive_eval(word, formula, position=0):
    """Direct recursive semantics on the unrolled word prefix + loop*(d+1),
    shifted by the starting position."""
    _check_atoms(word, formula)
    p, l = len(word.prefix), len(word.loop)
    horizon = max(position, p) + l * (formula.temporal_depth() + 1)
    unrolled = [word.letter(i) for i in range(horizon)]

    def at(i):
        if i >= horizon:
            raise AssertionError("unrolling bound exceeded")
        return unrolled[i]

    def window(i):
        # one full period from i covers every distinct future position
        return range(i, max(i, p) + l)

    def sat(f, i):
        op = f.op
        if op == "true":
            return True
        if op == "false":
            return False
        if op == "atom":
            return f.name in at(i)
        if op == "!":
            return not sat(f.args[0], i)
        if op == "&&":
            return sat(f.args[0], i) and sat(f.args[1], i)
        if op == "||":
            return sat(f.args[0], i) or sat(f.args[1], i)
        if op == "->":
            return not sat(f.args[0], i) or sat(f.args[1], i)
        if op == "<->":
            return sat(f.args[0], i) == sat(f.args[1], i)
        if op == "X":
            return sat(f.args[0], i + 1)
        if op == "G":
            return all(sat(f.args[0], k) for k in window(i))
        if op == "F":
            return any(sat(f.args[0], k) for k in window(i))
        a, b = f.args
        if op == "U":
            return any(sat(b, k) and all(sat(a, j) for j in range(i, k)) for k in window(i))
        if op == "R":
            # b holds up to and including the first a, or forever
            return all(sat(b, k) or any(sat(a, j) for j in range(i, k)) for k in window(i))
        if op == "W":
            return (any(sat(b, k) and all(sat(a, j) for j in range(i, k)) for k in window(i))
                    or all(sat(a, k) for k in window(i)))
        raise ValueError(f"unknown operator {op}")

    return sat(formula, position)


@dataclass(frozen=True)
class Equal:
    def __bool__(self):
        return True

    def __repr__(self):
        return "Equal()"


@dataclass(frozen=True)
class Counterexample:
    word: LassoWord

    def __bool__(self):
        return False


class _Vectorised:
    """Subformula valuations computed on numpy boolean arrays."""

    def __init__(self, formulas, atoms):
        self.subs = []
        seen = set()
        for f in formulas:
            for s in f.subformulas():
                if s not in seen:
                    seen.add(s)
                    self.subs.append(s)
        self.index = {s: i for i, s in enumerate(self.subs)}
        self.atom_bit = {a: 1 << k for k, a in enumerate(atoms)}

    def loops(self, letters_by_pos):
        """letters_by_pos: int array (rows, l).  Returns (rows, n_subs) at position 0."""
        rows, l = letters_by_pos.shape
        vals = {}
        nxt = lambda v: np.roll(v, -1, axis=1)
        for s in self.subs:
            op = s.op
            if op == "true":
                v = np.ones((rows, l), bool)
            elif op == "false":
                v = np.zeros((rows, l), bool)
            elif op == "atom":
                v = (letters_by_pos & self.atom_bit[s.name]) != 0
            else:
                a = vals[s.args[0]]
                b = vals[s.args[1]] if len(s.args) == 2 else None
                if op == "!":
                    v = ~a
                elif op == "&&":
                    v = a & b
                elif op == "||":
                    v = a | b
                elif op == "->":
                    v = ~a | b
                elif op == "<->":
                    v = a == b
                elif op == "X":
                    v = nxt(a)
                else:
                    v = np.full((rows, l), op in ("G", "R", "W"))
                    for _ in range(l + 1):
                        v = self._step(op, a, b, nxt(v))
            vals[s] = v
        return np.stack([vals[s][:, 0] for s in self.subs], axis=1)

    @staticmethod
    def _step(op, a, b, nxt):
        if op == "G":
            return a & nxt
        if op == "F":
            return a | nxt
        if op in ("U", "W"):
            return b | (a & nxt)
        return b & (a | nxt)

    def prepend(self, states, letter):
        """Valuations at position i given the letter at i and valuations at i+1."""
        rows = states.shape[0]
        out = np.empty_like(states)
        for k, s in enumerate(self.subs):
            op = s.op
            if op == "true":
                out[:, k] = True
            elif op == "false":
                out[:, k] = False
            elif op == "atom":
                out[:, k] = bool(letter & self.atom_bit[s.name])
            else:
                a = out[:, self.index[s.args[0]]]
                b = out[:, self.index[s.args[1]]] if len(s.args) == 2 else None
                if op == "!":
                    out[:, k] = ~a
                elif op == "&&":
                    out[:, k] = a & b
                elif op == "||":
                    out[:, k] = a | b
                elif op == "->":
                    out[:, k] = ~a | b
                elif op == "<->":
                    out[:, k] = a == b
                elif op == "X":
                    out[:, k] = states[:, self.index[s.args[0]]]
                else:
                    out[:, k] = self._step(op, a, b, states[:, k])
        assert out.shape[0] == rows
        return out


def bounded_equiv(f, g, ap=None, K=4, L=4):
    """Compare f and g at position 0 of every lasso with prefix <= K and
    1 <= loop <= L.  Returns Equal() or Counterexample(word)."""
    atoms = sorted(f.atoms() | g.atoms())
    alphabet = frozenset(ap) | frozenset(atoms) if ap is not None else frozenset(atoms)
    m = len(atoms)
    vec = _Vectorised([f, g], atoms)
    fi, gi = vec.index[f], vec.index[g]
    nletters = 1 << m

    def decode(letter):
        return frozenset(a for a in atoms if letter & vec.atom_bit[a])

    # loops of every length, all at once per length
    loop_states, loop_words = [], []
    for l in range(1, L + 1):
        words = np.array(list(product(range(nletters), repeat=l)), dtype=np.int64).reshape(-1, l)
        loop_states.append(vec.loops(words))
        loop_words.extend(tuple(w) for w in words)
    states = np.concatenate(loop_states)
    states, first = np.unique(states, axis=0, return_index=True)
    # provenance: ("loop", loop word) or ("prefix", letter, parent index in previous level)
    origin = [("loop", loop_words[i]) for i in first]
    levels = [(states, origin)]

    for k in range(K + 1):
        states, origin = levels[-1]
        diff = np.nonzero(states[:, fi] != states[:, gi])[0]
        if diff.size:
            return Counterexample(_rebuild(levels, int(diff[0]), decode, alphabet))
        if k == K:
            break
        new_states, new_origin = [], []
        for letter in range(nletters):
            new_states.append(vec.prepend(states, letter))
            new_origin.extend(("prefix", letter, j) for j in range(states.shape[0]))
        merged = np.concatenate(new_states)
        merged, first = np.unique(merged, axis=0, return_index=True)
        levels.append((merged, [new_origin[i] for i in first]))
    return Equal()


def _rebuild(levels, idx, decode, alphabet):
    prefix = []
    for depth in range(len(levels) - 1, -1, -1):
        entry = levels[depth][1][idx]
        if entry[0] == "loop":
            return LassoWord(alphabet, tuple(prefix), tuple(decode(x) for x in entry[1]))
        _, letter, idx = entry
        prefix.append(decode(letter))
    raise AssertionError("broken provenance chain")
