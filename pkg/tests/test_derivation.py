import pytest

from su3bethe.derivation import (block_matrix, chain_values, full_from_hat, g_closed, g_sum, l_tilde_a,
                                 l_tilde_a_sum, l_tilde_b, l_tilde_b_sum)
from su3bethe.scalar_product import build_block_matrix, scalar_product_oracle
from su3bethe.suites import onshell_instance


@pytest.mark.parametrize("a,b", [(a, b) for a in range(3) for b in range(3)])
def test_every_stage_equals_oracle(sampler, a, b):
    d = onshell_instance(sampler, a, b)
    o = scalar_product_oracle(d)
    stages = chain_values(d)
    assert stages
    for name, v in stages.items():
        assert full_from_hat(d, v) == o, name


def test_blocks_match_single_matrix(sampler):
    d = onshell_instance(sampler, 2, 2)
    assert block_matrix(d) == build_block_matrix(d)


@pytest.mark.parametrize("n", range(3))
def test_g_closed_form(sampler, n):
    d = onshell_instance(sampler, 2, 2)
    assert g_sum(d, range(n), range(n)) == g_closed(d, d.uB[:n], d.vC[:n])


def test_l_sums_are_determinants(sampler):
    d = onshell_instance(sampler, 2, 2)
    assert l_tilde_a_sum(d, d.uB[:1], d.vC[:1]) == l_tilde_a(d, d.uB[:1] + d.vC[:1])
    assert l_tilde_b_sum(d, d.vC[:1], d.uB[:1]) == l_tilde_b(d, d.vC[:1] + d.uB[:1])
