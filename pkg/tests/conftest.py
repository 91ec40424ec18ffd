import pytest

from zetalab.symbolics import parse_poly

CUSP_FORM_TEXT = (
    "L^-1 + L*t + L^2*t^2 + "
    "((L^7-L^6)*t^3 + L^7*t^4 + L^7*t^7)/((1-L*t^3)*(1-t))"
)


@pytest.fixture(scope="session")
def curves():
    return {
        "cusp": parse_poly("y^2 - x^3"),
        "node": parse_poly("x*y"),
        "smooth": parse_poly("y - x^2"),
        "line": parse_poly("y - x"),
        "nodal_cubic": parse_poly("y^2 - x^2 - x^3"),
        "e8ish": parse_poly("y^3 - x^5"),
        "quasi34": parse_poly("y^3 - x^4"),
        "higher_cusp": parse_poly("y^2 - x^5"),
        "tacnode": parse_poly("y^2 - x^4"),
    }
