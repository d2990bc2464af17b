"""Exact stabilizer engine over Z_n: ground-space dimension, phase
consistency, logical operators, syndromes, and string/loop constructions.

A stabilizer model is a list of commuting Pauli-string generators with
target eigenvalue exponents.  The simultaneous eigenspace dimension is
``n^sites / |generated exponent group|`` when every kernel relation of the
exponent matrix multiplies out to the phase demanded by the targets, and
zero (a frustrated model) otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .paulis import PauliString, symplectic_phase

PATH_KINDS = {
    # constituent kind -> X-site directions at the step's vertex
    "I": ("W",),
    "II": ("S",),
    "III": ("W", "S"),
    "IV": ("N", "E"),
}


class InvalidModelError(ValueError):
    pass


class InvalidPathError(ValueError):
    pass


@dataclass
class StabilizerModel:
    n: int
    nsites: int
    generators: list  # list of (PauliString, target exponent mod n)
    provenance: list  # per-generator (term kind, location)
    term_members: list  # per-term list of generator indices
    term_info: list  # per-term (kind, location)
    lattice: object = None
    model: str = None

    @classmethod
    def from_hamiltonian(cls, h):
        gens, prov, members, info = [], [], [], []
        for t in h.terms:
            idxs = []
            for s, tgt in t.factors:
                idxs.append(len(gens))
                gens.append((s, tgt % h.n))
                prov.append((t.kind, t.location))
            members.append(idxs)
            info.append((t.kind, t.location))
        return cls(
            n=h.n,
            nsites=h.lattice.n_sites,
            generators=gens,
            provenance=prov,
            term_members=members,
            term_info=info,
            lattice=h.lattice,
            model=h.model,
        )

    def exponent_matrix(self):
        """Rows are generator (x | z) exponent vectors."""
        rows = []
        for s, _ in self.generators:
            rows.append(np.concatenate([s.x, s.z]))
        return np.array(rows, dtype=np.int64)

    def check_commuting(self):
        gens = [s for s, _ in self.generators]
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if symplectic_phase(gens[i], gens[j]) != 0:
                    raise InvalidModelError(
                        f"generators {i} and {j} do not commute"
                    )

    def with_flipped_target(self, index, delta=1):
        gens = list(self.generators)
        s, t = gens[index]
        gens[index] = (s, (t + delta) % self.n)
        return StabilizerModel(
            self.n,
            self.nsites,
            gens,
            self.provenance,
            self.term_members,
            self.term_info,
            self.lattice,
            self.model,
        )


def _relation_phase_ok(m, relation):
    """Multiply out a kernel relation and compare against the target phases."""
    n = m.n
    acc = PauliString.identity(n, m.nsites)
    tsum = 0
    for i, r in enumerate(relation):
        r = int(r) % n
        if r == 0:
            continue
        s, t = m.generators[i]
        acc = acc * (s**r)
        tsum += r * t
    if acc.x.any() or acc.z.any():
        raise AssertionError("relation vector is not actually a relation")
    return acc.phase % (2 * n) == (2 * tsum) % (2 * n)


def phase_consistent(m):
    """Whether every relation among generators is compatible with the targets."""
    mat = m.exponent_matrix()
    for rel in linalg.left_kernel_generators_mod_n(mat, m.n):
        if not _relation_phase_ok(m, rel):
            return False
    return True


def gsd(m):
    """Ground-space dimension as an exact integer (0 when frustrated)."""
    m.check_commuting()
    if not phase_consistent(m):
        return 0
    mat = m.exponent_matrix()
    order = linalg.image_order_mod_n(mat, m.n)
    total = m.n**m.nsites
    if total % order:
        raise AssertionError("group order does not divide the space dimension")
    return total // order


def logical_qudit_count(m):
    g = gsd(m)
    if g == 0:
        raise InvalidModelError("frustrated model has no code space")
    k = 0
    while g > 1:
        if g % m.n:
            raise InvalidModelError("ground space is not a qudit power")
        g //= m.n
        k += 1
    return k


def _symplectic_form(u, v, n, nsites):
    ux, uz = u[:nsites], u[nsites:]
    vx, vz = v[:nsites], v[nsites:]
    return int(ux @ vz - uz @ vx) % n


def logical_basis(m):
    """Conjugate pairs of logical operators (exponent-vector construction).

    Returns ``(k, pairs)`` where each pair (P, Q) commutes with every
    generator and satisfies ``Q P = w_n P Q``.  Prime n only.
    """
    n = m.n
    if not linalg.is_prime(n):
        raise NotImplementedError("logical basis extraction needs a prime dimension")
    k = logical_qudit_count(m)
    mat = m.exponent_matrix()
    nsites = m.nsites
    # centralizer: vectors v with (x|z) . J . gens^T == 0
    twist = np.concatenate([mat[:, nsites:], -mat[:, :nsites]], axis=1) % n
    cands = [v % n for v in linalg.nullspace_mod_p(twist, n)]
    pairs = []
    while cands:
        u = cands.pop(0)
        partner = None
        for idx, v in enumerate(cands):
            if _symplectic_form(u, v, n, nsites) != 0:
                partner = idx
                break
        if partner is None:
            continue  # u commutes with everything left: stabilizer-equivalent
        v = cands.pop(partner)
        scale = linalg._inv_mod(_symplectic_form(u, v, n, nsites), n)
        v = (v * scale) % n
        rest = []
        for w in cands:
            w = (w - _symplectic_form(u, w, n, nsites) * v + _symplectic_form(v, w, n, nsites) * u) % n
            rest.append(w)
        cands = rest
        pairs.append((u, v))
    if len(pairs) != k:
        raise AssertionError(f"found {len(pairs)} conjugate pairs, expected {k}")

    def to_pauli(vec):
        return PauliString(n, vec[:nsites], vec[nsites:], 0)

    return k, [(to_pauli(u), to_pauli(v)) for u, v in pairs]


@dataclass
class Syndrome:
    flips: list  # per-generator eigenvalue shift exponent in Z_n
    violated: list  # (term kind, location) of each violated term
    energy: int


def syndrome(m, error):
    """Eigenvalue shifts caused by a Pauli error; energy counts violated
    TERMS (a term is violated when any of its factors shifts)."""
    flips = [symplectic_phase(error, s) for s, _ in m.generators]
    violated = []
    for idxs, info in zip(m.term_members, m.term_info):
        if any(flips[i] for i in idxs):
            violated.append(info)
    return Syndrome(flips=flips, violated=violated, energy=len(violated))


def in_stabilizer_group(m, p):
    """Exponent-level membership of p in the generated group."""
    vec = np.concatenate([p.x, p.z])
    return linalg.in_rowspan_mod_n(m.exponent_matrix(), vec, m.n)


def is_logical(m, p):
    """Classify a Pauli string: 'detectable' (nonzero syndrome),
    'stabilizer' (in the generated group) or 'logical'."""
    if any(syndrome(m, p).flips):
        return "detectable"
    return "stabilizer" if in_stabilizer_group(m, p) else "logical"


def logically_equivalent(m, p, q):
    """Whether two undetectable strings differ by a stabilizer element."""
    diff = p * q.inverse()
    if any(syndrome(m, diff).flips):
        return False
    return in_stabilizer_group(m, diff)


# -- string and loop operators -------------------------------------------------


@dataclass
class PathSpec:
    """A chain of constituent X placements, each anchored at a vertex.

    ``steps`` is a list of (vertex, kind) with kind in I/II/III/IV.  A vertex
    may carry more than one step (that is how a loop detours around a vertex)
    but never both III and IV, and never a repeated kind.
    """

    steps: list
    closed: bool = False

    def validate(self):
        seen = {}
        for v, kind in self.steps:
            if kind not in PATH_KINDS:
                raise InvalidPathError(f"unknown constituent kind {kind!r}")
            kinds = seen.setdefault(tuple(v), set())
            if kind in kinds:
                raise InvalidPathError(f"repeated constituent {kind} at vertex {v}")
            if {"III", "IV"} <= kinds | {kind}:
                raise InvalidPathError(
                    f"constituents III and IV together at vertex {v} form a vertex operator"
                )
            kinds.add(kind)


def string_operator(lat, path, n=2):
    """X placements of a constituent path as a single PauliString."""
    path.validate()
    x_at = {}
    for v, kind in path.steps:
        x, y = v
        for d in PATH_KINDS[kind]:
            idx = lat.site_index(lat.site(x, y, d))
            x_at[idx] = x_at.get(idx, 0) + 1
    return PauliString.from_ops(n, lat.n_sites, x_at=x_at)


def _allowed_chain(m, length):
    """Deconfined open string of the given length for the current model."""
    lat = m.lattice
    if m.model == "mhoriz":
        if length > lat.m - 1:
            raise InvalidPathError("path exceeds the lattice")
        steps = [((x, 1), "II") for x in range(length)]
    else:
        if length > lat.n - 1:
            raise InvalidPathError("path exceeds the lattice")
        steps = [((1, y), "I") for y in range(length)]
    return PathSpec(steps)


def confinement_profile(m, direction, lengths):
    """Syndrome energy of strings of growing length.

    ``allowed`` strings are chains of the model's deconfined constituent and
    cost a constant 2; ``forbidden-vertical`` places X on E sites moving up,
    ``forbidden-horizontal`` places X on N sites moving east, both of which
    drag vertex excitations along and cost energy per step.
    """
    lat = m.lattice
    out = []
    for length in lengths:
        if direction == "allowed":
            err = string_operator(lat, _allowed_chain(m, length), m.n)
        elif direction == "forbidden-vertical":
            if length > lat.n - 1:
                raise InvalidPathError("path exceeds the lattice")
            x_at = {lat.site_index(lat.site(0, y, "E")): 1 for y in range(length)}
            err = PauliString.from_ops(m.n, m.nsites, x_at=x_at)
        elif direction == "forbidden-horizontal":
            if length > lat.m - 1:
                raise InvalidPathError("path exceeds the lattice")
            x_at = {lat.site_index(lat.site(x, 0, "N")): 1 for x in range(length)}
            err = PauliString.from_ops(m.n, m.nsites, x_at=x_at)
        else:
            raise ValueError(f"unknown direction {direction!r}")
        out.append(syndrome(m, err).energy)
    return out


def report(m):
    """Summary dict used by the command-line interface."""
    mat = m.exponent_matrix()
    g = gsd(m)
    consistent = g != 0
    order = linalg.image_order_mod_n(mat, m.n)
    rank = 0
    o = order
    while o > 1 and o % m.n == 0:
        o //= m.n
        rank += 1
    k = logical_qudit_count(m) if consistent and g > 0 else 0
    return {
        "n": m.n,
        "sites": m.nsites,
        "generators": len(m.generators),
        "group_order": order,
        "rank": rank if o == 1 else None,
        "relations": (len(m.generators) - rank) if o == 1 else None,
        "consistency": consistent,
        "gsd": g,
        "k": k,
    }
