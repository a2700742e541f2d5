"""Hirzebruch-Jung chain calculus: blow-up/blow-down moves, Wahl splits, parallelism."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exactmath import Chain, DomainError, recognize_wahl
from .lattice import parallel, resolution_profile, vertex_normalizer, vertex_type
from .wedge import MarkedChain, WedgeParams, cut_dirs, ray_dirs


def blowup(chain: Chain, position: int) -> Chain:
    """Insert a 1 at the position and increment each existing neighbor."""
    c = list(chain)
    if not (0 <= position <= len(c)):
        raise DomainError(f"blow-up position {position} out of range 0..{len(c)}")
    if position > 0:
        c[position - 1] += 1
    if position < len(c):
        c[position] += 1
    c.insert(position, 1)
    return tuple(c)


def blowdown(chain: Chain, index: int) -> Chain:
    """Remove a 1 at the index and decrement each existing neighbor."""
    c = list(chain)
    if not (0 <= index < len(c)):
        raise DomainError(f"index {index} out of range")
    if c[index] != 1:
        raise DomainError(f"entry at index {index} is {c[index]}, not 1")
    c.pop(index)
    if index > 0:
        c[index - 1] -= 1
    if index < len(c):
        c[index] -= 1
    return tuple(c)


@dataclass(frozen=True)
class Move:
    kind: str  # "up" | "down"
    at: int
    expect: Optional[Chain] = None

    def to_json(self) -> dict:
        return {
            "op": self.kind,
            "at": self.at,
            **({} if self.expect is None else {"expect": list(self.expect)}),
        }

    @classmethod
    def from_json(cls, d: dict) -> "Move":
        if d.get("op") not in ("up", "down"):
            raise DomainError(f"unknown move op {d.get('op')!r}")
        expect = d.get("expect")
        return cls(d["op"], d["at"], None if expect is None else tuple(expect))


@dataclass(frozen=True)
class MoveScript:
    moves: tuple[Move, ...]

    @classmethod
    def from_json(cls, items: list) -> "MoveScript":
        return cls(tuple(Move.from_json(d) for d in items))

    def to_json(self) -> list:
        return [m.to_json() for m in self.moves]


def replay(start: Chain, script: MoveScript) -> Chain:
    """Run the script, checking each expected snapshot; abort with the step index."""
    chain = tuple(start)
    for i, mv in enumerate(script.moves):
        chain = blowup(chain, mv.at) if mv.kind == "up" else blowdown(chain, mv.at)
        if mv.expect is not None and chain != mv.expect:
            raise DomainError(
                f"step {i}: got {list(chain)}, expected {list(mv.expect)}"
            )
    return chain


def find_wahl_splits(chain: Chain):
    """All decompositions left ++ [c] ++ right with both blocks Wahl chains.

    Empty blocks are excluded: this certifies two-sided data.
    Returns [(MarkedChain, (p,q) left, (p,q) right), ...].
    """
    out = []
    for i in range(1, len(chain) - 1):
        left, c, right = chain[:i], chain[i], chain[i + 1 :]
        lw = recognize_wahl(left)
        if lw is None:
            continue
        rw = recognize_wahl(right)
        if rw is None:
            continue
        out.append((MarkedChain(left, c, right), lw, rw))
    return out


def k1a_parallelism(w: WedgeParams):
    """Is the left branch cut parallel to an edge resolving the right vertex?

    Resolves the right vertex in the wedge's own coordinates and compares
    directions exactly.  Returns (found, witness) with witness =
    (edge index, direction, self-intersection) when found.
    """
    if w.p2 == 1:
        return False, None
    _, r2 = ray_dirs(w)
    b1, _ = cut_dirs(w)
    # outgoing edges at x2, counterclockwise: (R2 dir, compact edge toward x1)
    v1, v2 = r2, (-1, 0)
    t = vertex_type(v1, v2)
    nmap = vertex_normalizer(v1, v2).inverse()
    for idx, (direction, self_int) in enumerate(resolution_profile(t)):
        edge_dir = nmap.apply_vector(direction)
        if parallel(edge_dir, b1):
            return True, (idx, edge_dir, self_int)
    return False, None
