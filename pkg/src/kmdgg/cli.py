"""Command-line driver: every computation behind one deterministic interface.

Subcommands map one-to-one onto module operation families; text output is
byte-reproducible given (config, seed), JSON output uses a versioned
{schema, config, results} envelope, and the exit status is nonzero exactly
when a verification fails.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import dgg, weyl
from .cartan import canonical_K, fold, named_gcm, parse_gcm_spec
from .cores import LLMSInstance
from .distributive import labeled_posets, poset_to_json, render_tables
from .folding import (FoldedInstance, LimitInstance, limit_strong_path_to_shifted,
                      limit_weak_path_to_shifted, sagan_worley)
from .growth import ColoredPermutation, insert, permutation, reverse, young_phi
from .render import (figure_text, folded_p_text, llms_p_text, partition_str,
                     render_growth, weak_q_text)

SCHEMA = "kmdgg/1"


def _parse_gcm(text):
    if text.strip().startswith("{"):
        return parse_gcm_spec(json.loads(text))
    return named_gcm(text)


def _parse_weight(text, gcm):
    coords = [0] * gcm.n
    for term in text.split("+"):
        term = term.strip()
        mult = 1
        if "*" in term:
            head, term = term.split("*")
            mult = int(head)
        if not term.startswith("L"):
            raise ValueError(f"weight term {term!r} is not of the form L<i>")
        coords[gcm.node_index(int(term[1:]))] += mult
    return tuple(coords)


def _parse_K(text, gcm):
    if text == "can":
        return canonical_K(gcm)
    return tuple(int(x) for x in text.split(","))


class Output:
    def __init__(self, args, command):
        self.json = getattr(args, "render", "text") == "json"
        self.config = {k: v for k, v in sorted(vars(args).items())
                       if k not in ("func", "out") and v is not None}
        self.command = command
        self.lines = []
        self.results = {}
        self.failed = False

    def say(self, text=""):
        self.lines.append(text)

    def fail(self, text):
        self.failed = True
        self.lines.append(f"FAIL: {text}")

    def emit(self, args):
        if self.json:
            doc = {"schema": SCHEMA, "config": self.config,
                   "results": self.results, "ok": not self.failed}
            text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
        else:
            head = [f"# kmdgg {self.command}"]
            for k, v in self.config.items():
                head.append(f"# {k}: {v}")
            text = "\n".join(head + self.lines) + "\n"
        if getattr(args, "out", None):
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 1 if self.failed else 0


def cmd_ball(args):
    out = Output(args, "ball")
    gcm = _parse_gcm(args.gcm)
    ball = weyl.generate_ball(gcm, args.radius)
    sizes = ball.level_sizes()
    out.results["level_sizes"] = sizes
    out.say(f"levels: {sizes}")
    out.say(f"total: {len(ball)}")
    if args.render == "json":
        table = weyl.RootTable(gcm, weyl.default_table_depth(args.radius))
        strong = dgg.strong_graph(ball, gcm.rho(), table)
        weak = dgg.weak_graph(ball, (1,) * gcm.n)
        out.results["strong_edges"] = strong.to_json()
        out.results["weak_edges"] = weak.to_json()
        out.results["elements"] = [list(e.word) for e in ball.elements()]
    return out.emit(args)


def cmd_dual_check(args):
    out = Output(args, "dual-check")
    gcm = _parse_gcm(args.gcm)
    lam = _parse_weight(args.weight, gcm)
    K = _parse_K(args.K, gcm)
    ball = weyl.generate_ball(gcm, args.radius + 1)
    table = weyl.RootTable(gcm, weyl.default_table_depth(args.radius + 1))
    strong = dgg.strong_graph(ball, lam, table)
    weak = dgg.weak_graph(ball, K)
    r = gcm.pair(K, lam)
    rep = dgg.verify_duality(strong, weak, args.radius, r)
    out.results["r"] = r
    out.results["duality"] = bool(rep)
    if rep:
        out.say(f"r = {r}")
        out.say("OK")
    else:
        v, defect = rep.counterexample
        out.fail(f"duality defect at {v}: {defect}")
    return out.emit(args)


def cmd_count(args):
    out = Output(args, "count")
    gcm = _parse_gcm(args.gcm)
    lam = _parse_weight(args.weight, gcm)
    K = _parse_K(args.K, gcm)
    radius = args.upto + 1
    ball = weyl.generate_ball(gcm, radius)
    table = weyl.RootTable(gcm, weyl.default_table_depth(radius))
    strong = dgg.strong_graph(ball, lam, table)
    weak = dgg.weak_graph(ball, K)
    r = gcm.pair(K, lam)
    rows = []
    for n in range(1, args.upto + 1):
        ok, total = dgg.verify_identity(strong, weak, n, r)
        rows.append({"n": n, "sum": total, "ok": ok})
        out.say(f"n={n}: sum f_weak f_strong = {total} "
                f"{'== ' if ok else '!= '}r^n n!")
        if not ok:
            out.fail(f"identity fails at n={n}")
    out.results["r"] = r
    out.results["rows"] = rows
    return out.emit(args)


def cmd_insert(args):
    out = Output(args, "insert")
    phi = young_phi()
    rng = random.Random(args.seed)
    perms = []
    if args.perm:
        perms.append(permutation(args.perm))
    for _ in range(args.random or 0):
        vals = list(range(1, args.n + 1))
        rng.shuffle(vals)
        perms.append(ColoredPermutation(tuple(vals)))
    results = []
    for sigma in perms:
        P, Q, diagram = insert(sigma, phi, ())
        back = reverse(P, Q, phi, ())
        ok = back.targets == sigma.targets
        if not ok:
            out.fail(f"round trip failed for {sigma.one_line()}")
        results.append({"perm": sigma.one_line(),
                        "P": weak_q_text(P), "Q": weak_q_text(Q),
                        "shape": list(P.shape), "roundtrip": ok})
        out.say(f"perm {sigma.one_line()}  shape {partition_str(P.shape)}")
        out.say(f"  P: {weak_q_text(P)}")
        out.say(f"  Q: {weak_q_text(Q)}")
    out.results["insertions"] = results
    return out.emit(args)


def cmd_llms(args):
    out = Output(args, "llms")
    inst = LLMSInstance(args.n)
    phi = inst.phi()
    sigma = permutation(args.perm)
    P, Q, diagram = insert(sigma, phi, inst.hat0)
    back = reverse(P, Q, phi, inst.hat0)
    if back.targets != sigma.targets:
        out.fail("round trip failed")
    if args.render == "json":
        out.results["grid"] = [[list(v) for v in row] for row in diagram.grid]
        out.results["P"] = llms_p_text(P)
        out.results["Q"] = weak_q_text(Q)
    else:
        out.say(figure_text(diagram, llms_p_text(P), weak_q_text(Q)).rstrip("\n"))
    return out.emit(args)


def cmd_fold(args):
    out = Output(args, "fold")
    gcm_b = _parse_gcm(args.gcm)
    pi = tuple(int(x) for x in args.pi.split(","))
    fd = fold(gcm_b, pi)
    out.results["orbits"] = [list(o) for o in fd.orbits]
    out.results["kappa"] = fd.kappa
    out.results["folded_matrix"] = [list(r) for r in fd.folded.matrix]
    out.say(f"orbits: {[list(o) for o in fd.orbits]}")
    out.say(f"kappa: {fd.kappa}")
    out.say("folded matrix:")
    for row in fd.folded.matrix:
        out.say("  " + " ".join(f"{x:3d}" for x in row))
    # pairing dilation spot check
    ok = True
    for i in range(fd.folded.n):
        for k in range(fd.folded.n):
            co = tuple(1 if t == i else 0 for t in range(fd.folded.n))
            wt = tuple(1 if t == k else 0 for t in range(fd.folded.n))
            if fd.source.pair(fd.phi(co), fd.psi(wt)) != fd.kappa * (i == k):
                ok = False
    out.results["dilation"] = ok
    if not ok:
        out.fail("pairing dilation violated")
    else:
        out.say("pairing dilation: OK")
    return out.emit(args)


def cmd_c_insert(args):
    out = Output(args, "c-insert")
    jp = args.j_prime if args.j_prime is not None else args.i_prime
    sigma = permutation(args.perm)
    if args.n is None:
        inst = LimitInstance(args.i_prime, jp)
    else:
        inst = FoldedInstance(args.n, args.i_prime, jp)
    phi = inst.phi()
    P, Q, diagram = insert(sigma, phi, inst.hat0)
    back = reverse(P, Q, phi, inst.hat0)
    if back.targets != sigma.targets:
        out.fail("round trip failed")
    extra = []
    ptext = folded_p_text(P, inst) if args.n is None else weak_q_text(P)
    if args.n is None and args.i_prime == 0:
        extra = [("P*", limit_strong_path_to_shifted(P, inst).render()),
                 ("Q*", limit_weak_path_to_shifted(Q, inst).render())]
    if args.render == "json":
        out.results["P"] = ptext
        out.results["Q"] = weak_q_text(Q)
        for label, text in extra:
            out.results[label] = text
    else:
        out.say(figure_text(diagram, ptext, weak_q_text(Q), extra).rstrip("\n"))
    return out.emit(args)


def cmd_sw_check(args):
    out = Output(args, "sw-check")
    from itertools import permutations as iterperms
    inst = LimitInstance(0)
    phi = inst.phi()
    total = 0
    for n in range(1, args.upto + 1):
        count = 0
        for p in iterperms(range(1, n + 1)):
            sigma = ColoredPermutation(p)
            P, Q, _ = insert(sigma, phi, ())
            pstar = limit_strong_path_to_shifted(P, inst)
            qstar = limit_weak_path_to_shifted(Q, inst)
            oracle_p, oracle_q = sagan_worley(sigma.inverse().targets)
            if (qstar.rows, pstar.rows) != (oracle_p.rows, oracle_q.rows):
                out.fail(f"mismatch at {sigma.one_line()}")
                return out.emit(args)
            count += 1
        total += count
        out.say(f"S_{n}: {count} permutations agree with the oracle")
    out.results["checked"] = total
    out.say(f"total: {total}")
    return out.emit(args)


def cmd_distributive(args):
    out = Output(args, "distributive")
    gcm = _parse_gcm(args.gcm)
    lp = labeled_posets(gcm, args.i)
    tabs = render_tables(lp)
    if args.render == "json":
        out.results["poset"] = poset_to_json(lp)
        out.results["tables"] = tabs
    else:
        out.say(f"pathway: {lp.pathway}")
        for k in ("V_strong", "V_weak", "P", "Q"):
            out.say(f"[{k}]")
            out.say(tabs[k])
    return out.emit(args)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="kmdgg",
        description="labeled strong/weak dual graded graphs on Weyl groups")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **flags):
        p = sub.add_parser(name)
        for flag, opts in flags.items():
            p.add_argument(f"--{flag.replace('_', '-')}", **opts)
        p.add_argument("--render", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out")
        p.set_defaults(func=func)
        return p

    add("ball", cmd_ball, gcm={"required": True}, radius={"type": int, "required": True})
    add("dual-check", cmd_dual_check, gcm={"required": True},
        weight={"required": True}, K={"default": "can"},
        radius={"type": int, "required": True})
    add("count", cmd_count, gcm={"required": True}, weight={"required": True},
        K={"default": "can"}, upto={"type": int, "required": True})
    add("insert", cmd_insert, perm={}, random={"type": int},
        n={"type": int, "default": 5})
    add("llms", cmd_llms, n={"type": int, "required": True}, perm={"required": True})
    add("fold", cmd_fold, gcm={"required": True}, pi={"required": True})
    add("c-insert", cmd_c_insert, perm={"required": True},
        i_prime={"type": int, "default": 0}, j_prime={"type": int},
        n={"type": int})
    add("sw-check", cmd_sw_check, upto={"type": int, "default": 4})
    add("distributive", cmd_distributive, gcm={"required": True},
        i={"type": int, "required": True})

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (ValueError, LookupError, NotImplementedError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__,
                                     "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
