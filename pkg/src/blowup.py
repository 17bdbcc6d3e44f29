#!/usr/bin/env python3
"""
Blowup calculus on curve configurations.

A configuration is a list of curves with genus and self-intersection plus
the table of pairwise intersection numbers. Blowing up a point changes it
in two ways only:

- a point on exactly one curve C: C² drops by 1 and a new (-1)-curve meets C once;
- a transverse intersection point of C1 and C2: both squares drop by 1,
  C1·C2 drops by 1, and the new (-1)-curve meets each of them once.

Triple points and tangencies cannot be expressed.
"""

import logging
from typing import Annotated, Literal, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from errors import GraphError, NotIntersecting, ScriptError, UnknownCurve
from graph_model import CurveVertex, Edge, ResolutionGraph

logger = logging.getLogger(__name__)


class Configuration(BaseModel):
    """Curves on a smooth surface with their pairwise intersection numbers."""

    model_config = ConfigDict(frozen=True)

    curves: tuple[CurveVertex, ...] = ()
    pairwise: tuple[tuple[int, ...], ...] = ()

    @model_validator(mode="after")
    def _check_table(self) -> "Configuration":
        n = len(self.curves)
        names = [curve.name for curve in self.curves]
        if len(set(names)) != n:
            raise GraphError(f"Curve names are not unique: {names}")
        if len(self.pairwise) != n or any(len(row) != n for row in self.pairwise):
            raise GraphError(f"Intersection table is not {n}x{n}")
        for i in range(n):
            if self.pairwise[i][i] != 0:
                raise GraphError(f"Intersection table has nonzero diagonal at {names[i]!r}")
            for j in range(n):
                if self.pairwise[i][j] < 0 or self.pairwise[i][j] != self.pairwise[j][i]:
                    raise GraphError(f"Bad intersection entry between {names[i]!r} and {names[j]!r}")
        return self

    @property
    def names(self) -> list[str]:
        return [curve.name for curve in self.curves]

    def index_of(self, name: str) -> int:
        for i, curve in enumerate(self.curves):
            if curve.name == name:
                return i
        raise UnknownCurve(f"No curve named {name!r}")

    def curve(self, name: str) -> CurveVertex:
        return self.curves[self.index_of(name)]

    def intersection(self, a: str, b: str) -> int:
        return self.pairwise[self.index_of(a)][self.index_of(b)]

    def _with_new_curve(
        self,
        curves: list[CurveVertex],
        table: list[list[int]],
        new: CurveVertex,
        meets: Sequence[int] = (),
    ) -> "Configuration":
        if new.name in self.names:
            raise GraphError(f"Curve {new.name!r} already exists")
        row = [1 if i in meets else 0 for i in range(len(curves))]
        table = [r + [row[i]] for i, r in enumerate(table)]
        table.append(row + [0])
        return Configuration(
            curves=tuple(curves) + (new,),
            pairwise=tuple(tuple(r) for r in table),
        )

    def to_graph(self, names: Sequence[str] | None = None) -> ResolutionGraph:
        """Restrict to the named curves (all of them by default), in the order given."""
        selected = list(names) if names is not None else self.names
        if not selected:
            raise GraphError("Selection is empty")
        vertices = [self.curve(name) for name in selected]
        edges = []
        for a_pos, a in enumerate(selected):
            for b in selected[a_pos + 1:]:
                m = self.intersection(a, b)
                if m:
                    edges.append(Edge(u=a, v=b, multiplicity=m))
        return ResolutionGraph(vertices=tuple(vertices), edges=tuple(edges))


def start_curve(config: Configuration, name: str, genus: int, self_intersection: int) -> Configuration:
    """Add a curve disjoint from everything already present."""
    new = CurveVertex(name=name, genus=genus, self_intersection=self_intersection)
    return config._with_new_curve(list(config.curves), [list(r) for r in config.pairwise], new)


def _lowered(curve: CurveVertex) -> CurveVertex:
    return curve.model_copy(update={"self_intersection": curve.self_intersection - 1})


def apply_blowup_on(config: Configuration, curve: str, new_name: str) -> Configuration:
    """Blow up a general point of ``curve``."""
    i = config.index_of(curve)
    curves = list(config.curves)
    curves[i] = _lowered(curves[i])
    new = CurveVertex(name=new_name, genus=0, self_intersection=-1)
    logger.debug(f"blowup_on {curve}: {curve}² -> {curves[i].self_intersection}, new {new_name}")
    return config._with_new_curve(curves, [list(r) for r in config.pairwise], new, meets=(i,))


def apply_blowup_at(config: Configuration, c1: str, c2: str, new_name: str) -> Configuration:
    """Blow up one transverse intersection point of ``c1`` and ``c2``."""
    i, j = config.index_of(c1), config.index_of(c2)
    if i == j or config.pairwise[i][j] < 1:
        raise NotIntersecting(f"{c1!r} and {c2!r} do not meet")
    curves = list(config.curves)
    curves[i] = _lowered(curves[i])
    curves[j] = _lowered(curves[j])
    table = [list(r) for r in config.pairwise]
    table[i][j] -= 1
    table[j][i] -= 1
    new = CurveVertex(name=new_name, genus=0, self_intersection=-1)
    logger.debug(f"blowup_at {c1}∩{c2}: new {new_name}, {c1}·{c2} -> {table[i][j]}")
    return config._with_new_curve(curves, table, new, meets=(i, j))


class Start(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["start"] = "start"
    name: str
    genus: int = Field(default=0, ge=0)
    self_intersection: int


class BlowupOn(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["blowup_on"] = "blowup_on"
    curve: str
    new_name: str


class BlowupAt(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["blowup_at"] = "blowup_at"
    c1: str
    c2: str
    new_name: str


class Select(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["select"] = "select"
    names: tuple[str, ...]


Instruction = Annotated[Union[Start, BlowupOn, BlowupAt, Select], Field(discriminator="kind")]


class BlowupScript(BaseModel):
    model_config = ConfigDict(frozen=True)

    instructions: tuple[Instruction, ...]


def _step(config: Configuration, instruction: Instruction) -> Configuration:
    if isinstance(instruction, Start):
        return start_curve(config, instruction.name, instruction.genus, instruction.self_intersection)
    if isinstance(instruction, BlowupOn):
        return apply_blowup_on(config, instruction.curve, instruction.new_name)
    if isinstance(instruction, BlowupAt):
        return apply_blowup_at(config, instruction.c1, instruction.c2, instruction.new_name)
    return config


def execute(script: BlowupScript) -> tuple[Configuration, ResolutionGraph]:
    """Run every instruction; returns the final configuration and the exported graph."""
    config = Configuration()
    selection: ResolutionGraph | None = None
    for index, instruction in enumerate(script.instructions, start=1):
        try:
            if isinstance(instruction, Select):
                if not instruction.names:
                    raise GraphError("select needs at least one curve name")
                if selection is not None:
                    logger.warning(f"Instruction {index} replaces an earlier selection")
                selection = config.to_graph(instruction.names)
            else:
                config = _step(config, instruction)
        except ValueError as e:
            raise ScriptError(index, str(e)) from e
    if selection is None:
        if not config.curves:
            raise ScriptError(len(script.instructions), "script produced no curves")
        selection = config.to_graph()
    logger.info(f"Script ran {len(script.instructions)} instructions, exporting {selection.size} curves")
    return config, selection


def run_script(script: BlowupScript) -> ResolutionGraph:
    return execute(script)[1]


def star_script(genus: int, d: int) -> BlowupScript:
    """Construct the star of genus+3 rational (-d)-curves around a (-2)-curve."""
    if genus < 0 or d < 1:
        raise GraphError(f"Need genus >= 0 and d >= 1, got genus={genus}, d={d}")
    leaves = [f"C{i}" for i in range(1, genus + 4)]
    instructions: list[Instruction] = [Start(name="C0", genus=0, self_intersection=genus + 1)]
    instructions += [BlowupOn(curve="C0", new_name=leaf) for leaf in leaves]
    for leaf in leaves:
        instructions += [BlowupOn(curve=leaf, new_name=f"{leaf}_{k}") for k in range(1, d)]
    instructions.append(Select(names=("C0", *leaves)))
    return BlowupScript(instructions=tuple(instructions))
