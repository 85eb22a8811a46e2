import pytest

from mtlfi.chain import GODEL, LUKASIEWICZ, FiniteChain, builtin_chains


@pytest.fixture(scope="session")
def chains():
    ch = builtin_chains()
    ch["L3G3"] = FiniteChain.ordinal_sum(
        [(LUKASIEWICZ, 3), (GODEL, 3)], name="L3G3")
    ch["L4"] = FiniteChain.from_family(LUKASIEWICZ, 4, name="L4")
    return ch
