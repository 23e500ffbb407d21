"""Step-counted register machines and the matrix sequences they drive.

A machine exposes a start state, a deterministic step function and an
accept predicate.  The quantity of interest is the clocked accept time
r(n, j): the least step count at which input n is accepted, provided that
happens within j steps, and j otherwise.  Feeding r(n, j) into a matrix
family as the scale index yields a computable double sequence whose limit
encodes acceptance, which is what makes it useful as a test gadget.

A genuinely undecidable acceptance set cannot live in a test suite; the
bundled machines are decidable stand-ins that exercise the same mechanics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Protocol

from .exact.matrix import QMatrix
from .family import FamilyPoint, make_family_point


class RegisterMachine(Protocol):
    """Deterministic machine over an opaque state type."""

    name: str

    def start(self, n: int) -> object: ...

    def step(self, state: object) -> object: ...

    def accepts(self, state: object) -> bool: ...


class CollatzMachine:
    """Accepts n when the iteration n -> n/2 (even) / 3n+1 (odd) reaches 1.

    Input 0 is a fixed point that never reaches 1, so it never accepts.
    """

    name = "collatz"

    def start(self, n: int) -> int:
        return n

    def step(self, state: int) -> int:
        if state % 2 == 0:
            return state // 2
        return 3 * state + 1

    def accepts(self, state: int) -> bool:
        return state == 1


class EvenHaltMachine:
    """Accepts every even input at step 1; loops forever on odd inputs."""

    name = "even-halt"

    def start(self, n: int) -> tuple[int, int]:
        return (n, 0)

    def step(self, state: tuple[int, int]) -> tuple[int, int]:
        n, clock = state
        return (n, clock + 1)

    def accepts(self, state: tuple[int, int]) -> bool:
        n, clock = state
        return n % 2 == 0 and clock >= 1


class NeverAcceptMachine:
    """Rejects everything; useful for the non-halting branch."""

    name = "never"

    def start(self, n: int) -> int:
        return n

    def step(self, state: int) -> int:
        return state

    def accepts(self, state: int) -> bool:
        return False


MACHINES: dict[str, Callable[[], RegisterMachine]] = {
    "collatz": CollatzMachine,
    "even-halt": EvenHaltMachine,
    "never": NeverAcceptMachine,
}


def accept_time_capped(machine: RegisterMachine, n: int, j: int) -> int:
    """r(n, j): least accepting step count if it is <= j, else j.

    Step 0 is the start state, checked before any transition.
    """
    if n < 0 or j < 0:
        raise ValueError("inputs must be non-negative")
    state = machine.start(n)
    if machine.accepts(state):
        return 0
    for steps in range(1, j + 1):
        state = machine.step(state)
        if machine.accepts(state):
            return steps
    return j


def dyadic_family(m: int = 3, n: int = 2) -> Callable[[int], FamilyPoint]:
    """The scale sequence k -> family point at eps = 2^-k."""

    def member(k: int) -> FamilyPoint:
        return make_family_point(m, n, Fraction(1, 1 << k))

    return member


def halting_family_matrix(
    machine: RegisterMachine,
    family: Callable[[int], FamilyPoint],
    n: int,
    j: int,
) -> QMatrix:
    """The j-th approximation of the limit matrix attached to input n.

    Returns family(r(n, j)).A: stabilizes at the accept-time member when n
    is accepted, and converges to the family limit (scale index j -> infinity)
    when it is not.
    """
    return family(accept_time_capped(machine, n, j)).A
