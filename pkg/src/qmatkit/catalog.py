"""The standard N=2 deformations of the flip used throughout the tests."""

from .tensorspace import TensorOperator


def flip(dim: int = 2) -> TensorOperator:
    return TensorOperator.flip(dim)


def involutive_gl2() -> TensorOperator:
    """R^2 = I, with q entering only through a diagonal twist of the flip."""
    return TensorOperator.from_dense(
        [
            ["1", "0", "0", "0"],
            ["0", "0", "q", "0"],
            ["0", "1/q", "0", "0"],
            ["0", "0", "0", "1"],
        ]
    )


def hecke_gl2() -> TensorOperator:
    """The standard U_q(gl_2) Hecke symmetry, (R - q)(R + 1/q) = 0."""
    return TensorOperator.from_dense(
        [
            ["q", "0", "0", "0"],
            ["0", "q - 1/q", "1", "0"],
            ["0", "1", "0", "0"],
            ["0", "0", "0", "q"],
        ]
    )


NAMED = {
    "flip": flip,
    "involutive_gl2": involutive_gl2,
    "hecke_gl2": hecke_gl2,
}
