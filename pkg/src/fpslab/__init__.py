"""Exact formal power series laboratory.

Core objects: truncated series over exact rings (`series`), the inverse
logarithmic derivative f/f' and its conjugates, scaling-eigenproblem
families (`eigen`), asymptotic expressions in a large parameter
(`alphaexpr`), binomial-type polynomial families and their index
continuations (`binomial`), shift/derivation operator calculus (`opcalc`),
and integral-chain verification (`chains`).  A FastAPI service (`api`) and
a thin CLI client (`cli`) expose coefficient queries and the verification
suites.
"""

__version__ = "0.1.0"
