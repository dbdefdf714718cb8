"""String registries: ``name`` or ``name:key=value,key=value``.

Numbers use a dot decimal separator regardless of locale. List-valued
parameters (the atoms and probabilities of ``discrete``) separate items
with ``;``.
"""

from __future__ import annotations

import inspect

from ..core import deviations as dev
from ..core import generators as gen
from ..core.deviations import Deviation
from ..population.distributions import PRESETS, DistributionSpec


class UsageError(ValueError):
    """A registry string or flag combination that cannot be resolved."""


def parse_key(text: str) -> tuple[str, dict[str, str]]:
    name, _, rest = text.strip().partition(":")
    params: dict[str, str] = {}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq or not key.strip():
                raise UsageError(f"expected key=value in {text!r}, got {item!r}")
            if key.strip() in params:
                raise UsageError(f"parameter {key.strip()!r} given twice in {text!r}")
            params[key.strip()] = value.strip()
    if not name:
        raise UsageError(f"empty registry name in {text!r}")
    return name, params


def _number(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise UsageError(f"parameter {key}={value!r} is not a number") from None


def _numbers(key: str, value: str) -> list[float]:
    return [_number(key, v) for v in value.split(";") if v.strip()]


def _call(factory, name: str, params: dict[str, str], lists=()):
    sig = inspect.signature(factory)
    unknown = set(params) - set(sig.parameters)
    if unknown:
        raise UsageError(f"{name} does not take {', '.join(sorted(unknown))}; accepts {', '.join(sig.parameters) or 'nothing'}")
    kwargs = {k: (_numbers(k, v) if k in lists else _number(k, v)) for k, v in params.items()}
    try:
        sig.bind(**kwargs)
    except TypeError as exc:
        raise UsageError(f"{name}: {exc}") from None
    return factory(**kwargs)


def _generator(params: dict[str, str]) -> gen.Generator:
    fname = params.pop("f", None)
    if fname is None:
        raise UsageError("generator deviations need f=<identity|ln|exp|power|reciprocal|affine>")
    if fname not in gen.GENERATORS:
        raise UsageError(f"unknown generator {fname!r}; choose from {', '.join(gen.GENERATORS)}")
    keys = {"power": ("r",), "affine": ("a", "b")}.get(fname, ())
    return _call(gen.GENERATORS[fname], fname, {k: params.pop(k) for k in keys if k in params})


def _weight(params: dict[str, str]) -> gen.Weight:
    wname = params.pop("w", "one")
    if wname not in gen.WEIGHTS:
        raise UsageError(f"unknown weight {wname!r}; choose from {', '.join(gen.WEIGHTS)}")
    sub = {"r": params.pop("q")} if wname == "power" and "q" in params else {}
    return _call(gen.WEIGHTS[wname], f"weight {wname}", sub)


def _quasi_arithmetic(**params):
    f = _generator(params)
    if params:
        raise UsageError(f"quasi-arithmetic does not take {', '.join(sorted(params))}")
    return dev.quasi_arithmetic_deviation(f)


def _bajraktarevic(**params):
    f = _generator(params)
    p = _weight(params)
    if params:
        raise UsageError(f"bajraktarevic does not take {', '.join(sorted(params))}")
    return dev.make_bajraktarevic_deviation(f, p)


_DEVIATIONS = {
    "linear": dev.linear,
    "power": dev.power,
    "quadratic-example": dev.quadratic_example,
    "exponential-kink": dev.exponential_kink,
    "ex1v": dev.exponential_kink,
}
_GENERATOR_DEVIATIONS = {
    "quasi-arithmetic": _quasi_arithmetic,
    "bajraktarevic": _bajraktarevic,
}
DEVIATION_NAMES = tuple(_DEVIATIONS) + tuple(_GENERATOR_DEVIATIONS)
DISTRIBUTION_NAMES = tuple(PRESETS)


def resolve_deviation(text: str) -> Deviation:
    """Deviation from a registry string such as ``power:p=2`` or ``bajraktarevic:f=power,r=2,w=identity``.

    Generator deviations take ``f`` (with ``r`` for ``power`` and ``a``, ``b``
    for ``affine``) and, for ``bajraktarevic``, a weight ``w`` in
    ``one|identity|power`` whose exponent is ``q``.
    """
    name, params = parse_key(text)
    if name in _GENERATOR_DEVIATIONS:
        return _GENERATOR_DEVIATIONS[name](**params)
    if name not in _DEVIATIONS:
        raise UsageError(f"unknown deviation {name!r}; choose from {', '.join(DEVIATION_NAMES)}")
    return _call(_DEVIATIONS[name], name, params)


def resolve_distribution(text: str) -> DistributionSpec:
    """Distribution from a registry string such as ``exponential:rate=1`` or ``discrete:values=1;2;7``."""
    name, params = parse_key(text)
    if name not in PRESETS:
        raise UsageError(f"unknown distribution {name!r}; choose from {', '.join(DISTRIBUTION_NAMES)}")
    if name == "discrete":
        if "values" not in params:
            raise UsageError("discrete needs values=v1;v2;...")
        unknown = set(params) - {"values", "probs"}
        if unknown:
            raise UsageError(f"discrete does not take {', '.join(sorted(unknown))}")
        values = _numbers("values", params["values"])
        probs = _numbers("probs", params["probs"]) if "probs" in params else None
        try:
            return PRESETS[name](values, probs)
        except ValueError as exc:
            raise UsageError(f"discrete: {exc}") from None
    try:
        return _call(PRESETS[name], name, params)
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(f"{name}: {exc}") from None
