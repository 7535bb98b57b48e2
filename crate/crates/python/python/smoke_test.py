"""Smoke test for the pdlift extension module."""

import pathlib

import pdlift

CORPUS = pathlib.Path(__file__).resolve().parents[2] / "core" / "corpus"


def main():
    f = pdlift.Polynomial("x1*x2 + x3*x4", 4, "fp:2")
    assert str(pdlift.wp(f, 2)) == "x1*x2*x3*x4"
    assert (f - f).is_zero()

    koblitz = pdlift.Instance.load(str(CORPUS / "koblitz.inst"))
    assert koblitz.nvars == 6
    assert koblitz.context == (2, 1, 1)
    dp = pdlift.dp_check(koblitz)
    assert dp["verdict"] is False and dp["remainder"]
    lift = pdlift.lift_check(koblitz, method="membership")
    assert lift["verdict"] == "obstructed"
    assert pdlift.length(koblitz, order="lex") == 36
    link = pdlift.link(koblitz)
    assert (link["dim_c0"], link["dim_a0"], link["socle_dim"]) == (28, 36, 1)

    q4 = pdlift.gen_family("hypersurface-q", 2, 2)
    rep = pdlift.lift_check(q4)
    assert rep["certificate"]["kind"] == "alpha" and rep["certificate"]["alpha"] == "1"
    assert pdlift.Instance.parse(str(q4)).nvars == 12

    try:
        pdlift.dp_check(q4, cap=64)
    except pdlift.ResourceCapError:
        pass
    else:
        raise AssertionError("expected ResourceCapError")
    try:
        pdlift.Polynomial("x9", 2)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    assert pdlift.verify_koblitz()["passed"] is True
    print("pdlift smoke test: ok")


if __name__ == "__main__":
    main()
