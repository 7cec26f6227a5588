"""Exact Schubert calculus through derivations on exterior powers, with
Newton binomial reduction and closed-form counts of linear series on P^1."""

from .bigcomb import binomial, compositions, multinomial
from .derivations import (
    D,
    Dbar,
    DPolynomial,
    Factor,
    OperatorWord,
    Schur,
    apply_D,
    apply_Dbar,
    apply_word,
    integral_of_word,
    schur_operator,
)
from .enumerative import (
    BalanceError,
    count_nets,
    count_webs,
    d2_power_kernels,
    dbar_power_kernel,
    hyperstalls,
    pencil_product,
    ranestad,
    scherbak,
    schubert_degree,
)
from .exterior import Multivector, Shape, combine, degree_functional, normalize, weight
from .newton import (
    ReducedForm,
    expand_reduced,
    integrate_reduced,
    newton_D,
    newton_Dbar,
    reduce_power,
    reduce_word,
)
from .parsing import CycleExpression, ParseError, parse_cycle

__version__ = "0.1.0"
