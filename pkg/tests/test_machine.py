from fractions import Fraction

import pytest

from pinvkit.exact import frob_norm_sq
from pinvkit.family import make_family_point
from pinvkit.machine import (
    CollatzMachine,
    EvenHaltMachine,
    NeverAcceptMachine,
    accept_time_capped,
    dyadic_family,
    halting_family_matrix,
)


def collatz_steps_to_one(n, cap):
    """Independent simulation used as the oracle for the default machine."""
    state = n
    for steps in range(cap + 1):
        if state == 1:
            return steps
        state = state // 2 if state % 2 == 0 else 3 * state + 1
    return None


def test_even_machine_accepts_at_step_one():
    assert accept_time_capped(EvenHaltMachine(), 4, 5) == 1


def test_even_machine_never_accepts_odd():
    for j in (1, 3, 10, 64):
        assert accept_time_capped(EvenHaltMachine(), 3, j) == j


def test_zero_budget_boundary():
    for machine in (EvenHaltMachine(), CollatzMachine(), NeverAcceptMachine()):
        assert accept_time_capped(machine, 3, 0) == 0


def test_collatz_matches_independent_simulation():
    machine = CollatzMachine()
    for n in range(0, 51):
        for j in (0, 1, 7, 50, 200):
            expected = collatz_steps_to_one(n, j)
            r = accept_time_capped(machine, n, j)
            if expected is not None and expected <= j:
                assert r == expected
            else:
                assert r == j


def test_collatz_zero_never_accepts():
    assert accept_time_capped(CollatzMachine(), 0, 200) == 200


def test_accepted_input_stabilizes():
    fam = dyadic_family(3, 2)
    machine = EvenHaltMachine()
    expected = fam(1).A  # accept time 1 -> scale 2^-1
    for j in (1, 2, 10, 100):
        assert halting_family_matrix(machine, fam, 4, j) == expected


def test_never_accepted_input_converges_to_limit():
    fam = dyadic_family(3, 2)
    machine = EvenHaltMachine()
    A0 = make_family_point(3, 2, 0).A
    for j in (1, 5, 10, 30):
        Z = halting_family_matrix(machine, fam, 3, j)
        assert frob_norm_sq(Z - A0) == Fraction(1, 1 << (2 * j))


def test_zero_budget_yields_scale_one():
    fam = dyadic_family(3, 2)
    assert halting_family_matrix(EvenHaltMachine(), fam, 3, 0) == fam(0).A
    assert fam(0).eps == 1


def test_effective_convergence_modulus_is_identity():
    # Distance after j steps is exactly 2^-j for the never-accepting branch,
    # so precision 2^-N is reached at index N.
    fam = dyadic_family(3, 2)
    machine = NeverAcceptMachine()
    A0 = make_family_point(3, 2, 0).A
    for N in (1, 4, 16):
        Z = halting_family_matrix(machine, fam, 9, N)
        assert frob_norm_sq(Z - A0) == Fraction(1, 1 << (2 * N))


def test_negative_inputs_rejected():
    with pytest.raises(ValueError):
        accept_time_capped(CollatzMachine(), -1, 5)
    with pytest.raises(ValueError):
        accept_time_capped(CollatzMachine(), 1, -5)
