"""Line-oriented machine text format and DOT export.

Example::

    inputs a b
    outputs x y z
    initial q0
    q0 a q1 y
    q0 b q3 x
    ...
"""

from pathlib import Path

from .mealy import MealyMachine, OutputMap


class FormatError(ValueError):
    pass


def loads(text: str) -> MealyMachine:
    inputs = outputs = initial = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "inputs":
            inputs = rest
        elif head == "outputs":
            outputs = rest
        elif head == "initial":
            if len(rest) != 1:
                raise FormatError(f"line {lineno}: 'initial' takes one state")
            initial = rest[0]
        elif len(rest) == 3:
            rows.append((head, *rest))
        else:
            raise FormatError(f"line {lineno}: expected '<state> <input> <next> <output>'")
    if inputs is None or outputs is None or initial is None:
        raise FormatError("missing 'inputs', 'outputs' or 'initial' header")
    try:
        return MealyMachine.from_table(inputs, outputs, initial, rows)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def dumps(m: MealyMachine) -> str:
    lines = [
        "inputs " + " ".join(m.inputs),
        "outputs " + " ".join(m.outputs),
        f"initial {m.initial}",
    ]
    lines += [f"{q} {a} {nxt} {out}" for q, a, nxt, out in m.rows()]
    return "\n".join(lines) + "\n"


def to_dot(m: MealyMachine, name="mealy") -> str:
    lines = [f"digraph {name} {{", "  __start [shape=point];", f'  __start -> "{m.initial}";']
    lines += [f'  "{q}" [shape=circle];' for q in m.states]
    for q, a, nxt, out in m.rows():
        lines.append(f'  "{q}" -> "{nxt}" [label="{a}/{out}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_machine(path) -> MealyMachine:
    return loads(Path(path).read_text(encoding="utf-8"))


def write_machine(m: MealyMachine, path, dot=True):
    path = Path(path)
    path.write_text(dumps(m), encoding="utf-8")
    if dot:
        path.with_suffix(".dot").write_text(to_dot(m), encoding="utf-8")


def loads_maps(text: str, n_components=None):
    """Parse an output-map file: lines ``<component-index> <target-output> <component-output>``.

    Returns ``(target_outputs, [OutputMap, ...])``; each map's codomain is the
    set of component outputs it uses, in order of appearance.
    """
    tables = {}
    target = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or not parts[0].isdigit():
            raise FormatError(f"line {lineno}: expected '<index> <from> <to>'")
        i, y, z = int(parts[0]), parts[1], parts[2]
        tables.setdefault(i, {})[y] = z
        target.setdefault(y, None)
    count = n_components if n_components is not None else (max(tables) + 1 if tables else 0)
    if sorted(tables) != list(range(count)):
        raise FormatError(f"expected maps for components 0..{count - 1}")
    target_outputs = tuple(target)
    maps = []
    for i in range(count):
        table = tables[i]
        codomain = tuple(dict.fromkeys(table.values()))
        maps.append(OutputMap(target_outputs, codomain, table))
    return target_outputs, maps


def dumps_maps(maps) -> str:
    lines = ["# <component-index> <target-output> <component-output>"]
    for i, f in enumerate(maps):
        lines += [f"{i} {y} {f(y)}" for y in f.domain]
    return "\n".join(lines) + "\n"
