"""Group descriptor strings used on the command line.

Grammar::

    desc := 'Z' | 'Z^' k ':product' | 'Z^' k ':cone=' (preset | formula)
          | 'heis' | 'finite:S3' | 'finite:C' k | 'lex(' desc ',' desc ')'
    preset := 'ex2.9' | 'ex2.10'

A cone formula is parsed by :func:`lexpea.cones.parse_cone`, e.g.
``Z^2:cone=x1>=0 & x2>=0 | x1+x2>=2``.  User formulas are checked for
reflexivity, antisymmetry and transitivity on a small box before use.
"""
from __future__ import annotations

import re

from .cones import parse_cone
from .groups import (
    ConeGroup,
    Integers,
    Lex,
    PoGroup,
    cyclic,
    ex29_group,
    ex210_group,
    heisenberg,
    symmetric3,
)


class DescriptorError(ValueError):
    pass


def _split_lex_args(body: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1 :]
    raise DescriptorError(f"lex needs two arguments: {body!r}")


def check_cone_group(G: ConeGroup, radius: int = 3) -> None:
    pts = G.box(radius)
    if not G.in_cone(G.zero):
        raise DescriptorError("cone does not contain 0 (order not reflexive)")
    pos = [x for x in pts if G.in_cone(x)]
    for x in pos:
        if x != G.zero and G.in_cone(G.neg(x)):
            raise DescriptorError(f"cone is not pointed at {G.format(x)} (order not antisymmetric)")
        for y in pos:
            if not G.in_cone(G.add(x, y)):
                raise DescriptorError(
                    f"cone not closed under + at {G.format(x)}, {G.format(y)} (order not transitive)"
                )


def parse_group(desc: str) -> PoGroup:
    d = desc.strip()
    if d == "Z":
        return Integers(1)
    if d == "heis":
        return heisenberg()
    if d == "finite:S3":
        return symmetric3()
    m = re.fullmatch(r"finite:C(\d+)", d)
    if m:
        return cyclic(int(m.group(1)))
    m = re.fullmatch(r"Z\^(\d+):product", d)
    if m:
        return Integers(int(m.group(1)))
    m = re.fullmatch(r"Z\^(\d+):cone=(.+)", d)
    if m:
        k, body = int(m.group(1)), m.group(2).strip()
        if body == "ex2.9":
            if k != 2:
                raise DescriptorError("ex2.9 is a cone on Z^2")
            return ex29_group()
        if body == "ex2.10":
            if k != 2:
                raise DescriptorError("ex2.10 is a cone on Z^2")
            return ex210_group()
        try:
            G = ConeGroup(parse_cone(body, k))
        except ValueError as exc:
            raise DescriptorError(str(exc)) from None
        check_cone_group(G)
        return G
    if d.startswith("lex(") and d.endswith(")"):
        a, b = _split_lex_args(d[4:-1])
        return Lex(parse_group(a), parse_group(b))
    raise DescriptorError(f"unknown group descriptor {desc!r}")
