"""Text formats for maps, networks and datasets.

Documents are written as JSON (a subset of YAML) with every scalar as a
rational string; they are read with a YAML loader so hand-written files
may use plain YAML.  ``parse(print(obj)) == obj`` holds bit for bit.
"""
from __future__ import annotations

import json
from fractions import Fraction

import yaml

from .bounds import LabeledDataset
from .pwl import Interval, PwlFunction, as_rational, format_rational
from .relu import Layer, ReluNetwork


class FormatError(ValueError):
    pass


def _scalar(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise FormatError(f"scalar must be an integer or a rational string, got {v!r}")
    try:
        return as_rational(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {v!r}") from exc


def _load(text: str):
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise FormatError(str(exc)) from exc


def dump_pwl(f: PwlFunction) -> str:
    doc = {
        "domain": [format_rational(f.xs[0]), format_rational(f.xs[-1])],
        "breakpoints": [[format_rational(x), format_rational(y)] for x, y in f.breakpoints],
    }
    return json.dumps(doc, indent=1) + "\n"


def parse_pwl(text: str) -> PwlFunction:
    doc = _load(text)
    if not isinstance(doc, dict) or "breakpoints" not in doc:
        raise FormatError("PWL document needs a 'breakpoints' list")
    try:
        f = PwlFunction.from_points((_scalar(x), _scalar(y)) for x, y in doc["breakpoints"])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"invalid breakpoints: {exc}") from exc
    if "domain" in doc:
        lo, hi = (_scalar(v) for v in doc["domain"])
        if (lo, hi) != (f.xs[0], f.xs[-1]):
            raise FormatError(f"domain [{lo}, {hi}] disagrees with breakpoints")
    return f


def dump_network(net: ReluNetwork) -> str:
    layers = []
    for layer in net.layers:
        entry = {
            "weights": [[format_rational(w) for w in row] for row in layer.weights],
            "biases": [format_rational(b) for b in layer.biases],
            "activation": layer.activation,
        }
        if layer.offset != 0:
            entry["offset"] = format_rational(layer.offset)
        layers.append(entry)
    return json.dumps({"layers": layers}, indent=1) + "\n"


def parse_network(text: str) -> ReluNetwork:
    doc = _load(text)
    if not isinstance(doc, dict) or not isinstance(doc.get("layers"), list):
        raise FormatError("network document needs a 'layers' list")
    try:
        layers = tuple(
            Layer(
                tuple(tuple(_scalar(w) for w in row) for row in entry["weights"]),
                tuple(_scalar(b) for b in entry["biases"]),
                entry.get("activation", "relu"),
                _scalar(entry.get("offset", "0")),
            )
            for entry in doc["layers"]
        )
        return ReluNetwork(layers)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"invalid network: {exc}") from exc


def dump_dataset(d: LabeledDataset) -> str:
    return d.lines()


def parse_dataset(text: str, threshold, n: int | None = None) -> LabeledDataset:
    points = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            x, lab = line.split(",")
            points.append((_scalar(x), int(lab)))
        except ValueError as exc:
            raise FormatError(f"bad dataset line {line!r}") from exc
    if n is None:
        n = len(points) // 2
    return LabeledDataset(tuple(points), as_rational(threshold), n)


def parse_interval(text: str) -> Interval:
    try:
        lo, hi = text.split(",")
        return Interval(_scalar(lo.strip()), _scalar(hi.strip()))
    except ValueError as exc:
        raise FormatError(f"bad interval {text!r}; expected 'lo,hi'") from exc
