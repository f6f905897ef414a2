#!/usr/bin/env python3
"""Writes the model.gcl files of the bundled benchmarks.

The models have many joint branches (all agents move at once), so they are
generated rather than written by hand. Usage: gen_benchmark_models.py [ROOT]
"""

import itertools
import pathlib
import sys
from fractions import Fraction


def prob(p):
    # every branch probability here is a finite decimal
    s = format(float(p), ".12f").rstrip("0")
    return s + "0" if s.endswith(".") else s


def combine(*factors):
    """Cartesian product of per-component (probability, updates) lists."""
    out = []
    for combo in itertools.product(*factors):
        p = Fraction(1)
        ups = []
        for q, u in combo:
            p *= q
            ups.extend(u)
        out.append((p, ups))
    return out


def command(action, guard, branches):
    parts = [f"{prob(p)}:({' & '.join(u)})" for p, u in branches]
    return f"action {action} : {guard} ->\n    " + "\n  + ".join(parts) + ";"


def freeway():
    lanes = 4
    speed = [Fraction(1, 2), Fraction(3, 4), Fraction(1, 2), Fraction(1, 4)]
    cars = []
    for i, q in enumerate(speed, 1):
        c = f"c{i}"
        cars.append([(q, [f"{c}'={c}+1-4*({c}/3)"]), (1 - q, [f"{c}'={c}"])])
    hit = " | ".join(f"(y={i} & c{i}=0)" for i in range(1, lanes + 1))
    lines = [
        "// Freeway: a chicken crosses four lanes from row 0 to row 5. Car i sits",
        "// at column c_i of a cyclic lane of width 4 and advances with a per-lane",
        "// probability. The chicken walks in column 0; a car there pushes it back",
        "// one row. m is the highest row reached so far. Row 5 is absorbing.",
        "mdp",
        "",
        "var y : [0..5] init 0;",
    ]
    lines += [f"var c{i} : [0..3] init {i - 1};" for i in range(1, lanes + 1)]
    lines += ["var m : [0..5] init 0;", ""]
    moves = {"UP": "min(y+1,5)", "NOP": "y", "DOWN": "max(y-1,0)"}
    for a, target in moves.items():
        lines.append(f"action {a} : y=5 -> 1.0:(y'=5);")
        lines.append(command(a, f"y<5 & ({hit})", combine([(1, ["y'=y-1"])], *cars)))
        lines.append(command(a, f"y<5 & !({hit})", combine([(1, [f"y'={target}", f"m'=max(m,{target})"])], *cars)))
        lines.append("")
    lines += [
        'label "goal" = y=5;',
        "// still on the road (the start row counts)",
        'label "mid" = y<5;',
        "// one row below the best row so far",
        'label "mid_-1" = y=m-1;',
        "",
        f"reward UP : y=4 & !({hit}) : 10;",
    ]
    return "\n".join(lines) + "\n"


def avoidance():
    n = 4  # coordinates 0..n
    slick = Fraction(1, 10)
    stay = Fraction(1, 2)
    step = (1 - stay) / 4

    def obstacle(px, py):
        return [
            (stay, [f"{px}'={px}", f"{py}'={py}"]),
            (step, [f"{py}'=min({py}+1,{n})"]),
            (step, [f"{px}'=min({px}+1,{n})"]),
            (step, [f"{py}'=max({py}-1,0)"]),
            (step, [f"{px}'=max({px}-1,0)"]),
        ]

    moves = {
        "north": "ay'=min(ay+1,4)",
        "east": "ax'=min(ax+1,4)",
        "south": "ay'=max(ay-1,0)",
        "west": "ax'=max(ax-1,0)",
    }
    coll = "(ax=o1x & ay=o1y) | (ax=o2x & ay=o2y)"
    lines = [
        "// Avoidance: the agent moves on a 5x5 grid while two obstacles wander at",
        "// random (stay 0.5, each direction 0.125, clamped at the walls). The floor",
        "// is slick: a move fails with probability 0.1. Collisions are absorbing.",
        "mdp",
        "",
        "var ax : [0..4] init 0;",
        "var ay : [0..4] init 0;",
        "var o1x : [0..4] init 2;",
        "var o1y : [0..4] init 2;",
        "var o2x : [0..4] init 4;",
        "var o2y : [0..4] init 4;",
        "",
    ]
    for a, upd in moves.items():
        agent = [(1 - slick, [upd]), (slick, ["ax'=ax"])]
        lines.append(f"action {a} : {coll} -> 1.0:(ax'=ax);")
        branches = combine(agent, obstacle("o1x", "o1y"), obstacle("o2x", "o2y"))
        lines.append(command(a, f"!({coll})", branches))
        lines.append("")
    lines += [f'label "coll" = {coll};', ""]
    lines += [f"reward {a} : !({coll}) : 1;" for a in moves]
    return "\n".join(lines) + "\n"


def crazy_climber():
    top = 5
    fall = [
        (Fraction(4, 5), [f"o'=o-1+{top + 1}*(1-min(o,1))"]),
        (Fraction(1, 5), ["o'=o"]),
    ]
    done = f"(x=1 & o=h & h<{top}) | h={top}"
    lines = [
        "// Crazy Climber: the climber scales a three-column wall from height 0 to",
        f"// {top}. Objects fall down the middle column one row at a time (probability",
        "// 0.8 per step) and respawn at the top. The middle column has the best",
        "// grip: a climb succeeds there with probability 0.9, elsewhere 0.5.",
        "// Being hit and reaching the top are both absorbing.",
        "mdp",
        "",
        f"var h : [0..{top}] init 0;",
        "var x : [0..2] init 0;",
        f"var o : [0..{top}] init {top};",
        "",
    ]
    acts = {
        "LEFT": [(1, ["x'=max(x-1,0)"])],
        "RIGHT": [(1, ["x'=min(x+1,2)"])],
        "WAIT": [(1, ["x'=x"])],
    }
    for a, mv in acts.items():
        lines.append(f"action {a} : {done} -> 1.0:(h'=h);")
        lines.append(command(a, f"!({done})", combine(mv, fall)))
        lines.append("")
    for guard, grip in (("x=1", Fraction(9, 10)), ("x!=1", Fraction(1, 2))):
        climb = [(grip, [f"h'=min(h+1,{top})"]), (1 - grip, ["h'=h"])]
        lines.append(command("UP", f"!({done}) & {guard}", combine(climb, fall)))
    lines.append(f"action UP : {done} -> 1.0:(h'=h);")
    lines += [
        "",
        f'label "coll" = x=1 & o=h & h<{top};',
        f'label "top" = h={top};',
        "",
        f"reward UP : !({done}) & h={top - 1} : 10;",
    ]
    return "\n".join(lines) + "\n"


def main():
    root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).parent.parent / "benchmarks")
    for name, gen in (("freeway", freeway), ("avoidance", avoidance), ("crazy_climber", crazy_climber)):
        path = root / name / "model.gcl"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(gen())
        print(path)


if __name__ == "__main__":
    main()
