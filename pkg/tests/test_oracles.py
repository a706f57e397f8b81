"""The reference computations reproduce the frozen values."""
import sympy

import golden
import oracles as O


def test_somos_sequences_match_frozen_values():
    assert O.sequence(*O.SOMOS4, [1] * 4, 13) == golden.SOMOS4_ONES
    assert O.sequence(*O.SOMOS5, [1] * 5, 14) == golden.SOMOS5_ONES
    assert O.sequence(*O.SOMOS6, [1] * 6, 20) == golden.SOMOS6_ONES
    assert O.sequence(*O.SOMOS7, [1] * 7, 20) == golden.SOMOS7_ONES


def test_gale_robinson_form_agrees_with_window_form():
    assert O.gale_robinson(1, 2, 3, 6, 20) == golden.SOMOS6_ONES
    assert O.gale_robinson(1, 2, 4, 7, 20) == golden.SOMOS7_ONES
    assert O.gale_robinson(1, 2, None, 4, 13) == golden.SOMOS4_ONES
    assert O.gale_robinson(1, 2, None, 5, 14) == golden.SOMOS5_ONES


def _from_exponents(table, syms):
    return sum(c * sympy.Mul(*[s ** e for s, e in zip(syms, exps)]) for exps, c in table.items())


def test_somos4_symbolic_terms_match_frozen_forms():
    ys = O.symbolic_sequence(*O.SOMOS4, 6)
    syms = sympy.symbols("y0:4")
    assert sympy.simplify(ys[4] - _from_exponents(golden.SOMOS4_Y4, syms)) == 0
    assert sympy.simplify(ys[5] - _from_exponents(golden.SOMOS4_Y5, syms)) == 0


def test_cube_oracle_first_term():
    shift, F = O.cube(2, 3, 5)
    y = O.lattice(shift, F, lambda h: min(h) >= 0, lambda h: 1 + sum(h))
    # y111 * y000 = 2 y100 y011 + 3 y010 y101 + 5 y001 y110
    assert y((1, 1, 1)) == (2 * 2 * 3 + 3 * 2 * 3 + 5 * 2 * 3) / 1
