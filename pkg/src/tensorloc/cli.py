"""Command-line front end.

Every command prints one JSON object per check on standard output, then a
final ``summary`` line, and a short human summary on standard error. Exit
status is 0 when every check passes, 1 on a law failure and 2 on malformed or
missing input.
"""
from __future__ import annotations

import json
import os
import sys
import time
from pathlib import Path

import click

from . import __version__
from .examples import EXAMPLES
from .errors import IllTypedStrength, MalformedTable, NotComposable, TensorlocError, TypeMismatch

INPUT_ERRORS = (MalformedTable, IllTypedStrength, NotComposable, TypeMismatch)


class Run:
    """Collects check lines and input digests; renders the report."""

    def __init__(self, command):
        self.command = command
        self.inputs = {}
        self.checks = []

    def digest(self, path):
        from .io import digest

        self.inputs[str(path)] = digest(path)

    def check(self, name, fn):
        """Run ``fn() -> (ok, payload)`` and record it."""
        t0 = time.perf_counter()
        ok, payload = fn()
        self.emit({"check": name, "status": "pass" if ok else "fail", "seconds": round(time.perf_counter() - t0, 3),
                   **payload})
        return ok

    def emit(self, line):
        from .io import dumps

        self.checks.append(line)
        click.echo(dumps(line))

    def finish(self):
        from .io import dumps

        failed = [c["check"] for c in self.checks if c["status"] == "fail"]
        click.echo(dumps({"summary": {"tool": "tensorloc", "version": __version__, "command": self.command,
                                      "inputs": self.inputs, "status": "fail" if failed else "pass",
                                      "checks": len(self.checks), "failed": failed}}))
        click.echo(f"{self.command}: {len(self.checks) - len(failed)}/{len(self.checks)} checks passed"
                   + (f"; failed: {', '.join(failed)}" if failed else ""), err=True)
        return 1 if failed else 0


def _fail_input(command, e):
    from .io import dumps

    click.echo(dumps({"error": type(e).__name__, "message": str(e), "command": command}))
    click.echo(f"{command}: malformed input: {e}", err=True)
    return 2


def _guard(command, body):
    """Map exceptions to exit codes: bad input 2, any other library error 1."""
    from .io import dumps

    run = Run(command)
    try:
        body(run)
    except INPUT_ERRORS as e:
        sys.exit(_fail_input(command, e))
    except TensorlocError as e:
        payload = {"check": command, "status": "fail", "error": type(e).__name__, "message": str(e)}
        for attr in ("pair", "term"):
            if getattr(e, attr, None) is not None:
                from .io import encode_value

                payload[attr] = encode_value(getattr(e, attr))
        run.checks.append(payload)
        click.echo(dumps(payload))
    sys.exit(run.finish())


def _apply_bound(doc, bound):
    if bound is None or "builder" not in doc:
        return doc
    key = {"trace": "bound", "chain-process": "max_size", "state": "carriers", "finset": "max_size"}.get(doc["builder"])
    if key is not None:
        doc = {**doc, "params": {**doc.get("params", {}), key: bound}}
    return doc


def _load(run, category, monad=None, strength=None, bound=None):
    """Read the documents in order; returns ``(context, monad, strength)`` with absent parts as None."""
    from .io import load_category, load_monad, load_strength, read_json

    out = []
    docs = []
    for path in (category, monad, strength):
        if path is None:
            docs.append(None)
            continue
        docs.append(read_json(path))
        run.digest(path)
    ctx = load_category(_apply_bound(docs[0], bound))
    out.append(ctx)
    m = load_monad(docs[1], ctx) if docs[1] is not None else None
    out.append(m)
    out.append(load_strength(docs[2], ctx, m) if docs[2] is not None else None)
    return out


def _with_cap(cap):
    if cap is not None:
        os.environ["TENSORLOC_CAP"] = str(cap)


bound_opt = click.option("--bound", type=int, default=None, help="Override the builder's enumeration bound.")
cap_opt = click.option("--cap", type=int, default=None, help="Enumeration cap (same as TENSORLOC_CAP).")
existing = click.Path(dir_okay=False)


@click.group()
@click.version_option(__version__, prog_name="tensorloc")
def main():
    """Finite checks for localisable monads on symmetric monoidal categories."""


@main.command()
@click.argument("category", type=existing)
@bound_opt
@cap_opt
def zi(category, bound, cap):
    """Central idempotents and their semilattice."""
    from .central import zi_semilattice

    _with_cap(cap)

    def body(run):
        ctx, _, _ = _load(run, category, bound=bound)
        z = zi_semilattice(ctx.smc)
        run.check("zi", lambda: (True, {"zi": z.to_json(), "has_all_joins": z.has_all_joins()}))

    _guard("zi", body)


@main.command()
@click.argument("category", type=existing)
@bound_opt
@cap_opt
def stiff(category, bound, cap):
    """Stiffness and universal joins."""
    from .central import has_universal_joins, is_stiff, zi_semilattice
    from .io import encode_value

    _with_cap(cap)

    def body(run):
        ctx, _, _ = _load(run, category, bound=bound)
        z = zi_semilattice(ctx.smc)

        def stiffness():
            ok, where = is_stiff(ctx.smc, z)
            return ok, {"counterexample": None if where is None else {"A": encode_value(where[0]),
                                                                    "u": where[1], "v": where[2]}}

        run.check("stiff", stiffness)
        run.check("universal_joins", lambda: (lambda r: (r[0], {"reason": r[1]}))(has_universal_joins(ctx.smc, z)))

    _guard("stiff", body)


def _parse_at(ctx, at):
    from .central import zi_semilattice
    from .io import decode_value

    z = zi_semilattice(ctx.smc)
    try:
        U = decode_value(json.loads(at))
    except json.JSONDecodeError:
        raise MalformedTable(f"--at expects a JSON object, got {at!r}") from None
    for k, e in enumerate(z.elements):
        if e.dom == U:
            return z, k
    raise MalformedTable(f"{U!r} is not the domain of a representative central idempotent")


@main.command()
@click.argument("category", type=existing)
@click.argument("monad", type=existing)
@click.argument("strength", type=existing)
@click.option("--at", "at", required=True, help="Domain of the central idempotent, as JSON (e.g. '[0,1]').")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Write the restricted monad tables here.")
@bound_opt
@cap_opt
def restrict(category, monad, strength, at, out, bound, cap):
    """Restrict a localisable monad to ``C|u`` and check the monad laws there."""
    from .io import dumps, encode_value
    from .localisable import LocalisableMonad, restrict_monad
    from .monad import check_monad

    _with_cap(cap)

    def body(run):
        ctx, m, sf = _load(run, category, monad, strength, bound=bound)
        z, k = _parse_at(ctx, at)
        lm = LocalisableMonad(ctx.smc, m, sf)
        Tu = restrict_monad(lm, z.elements[k])
        rep = check_monad(Tu)
        run.check("restricted_monad", lambda: (rep.ok, {"u": k, "report": rep.to_json()}))
        if out is not None:
            Path(out).mkdir(parents=True, exist_ok=True)
            tables = {name: [[encode_value(a), encode_value(v)] for a, v in tab.items()]
                      for name, tab in Tu.table().items()}
            (Path(out) / "restricted_monad.json").write_text(dumps(tables) + "\n")

    _guard("restrict", body)


@main.command("check-localisable")
@click.argument("category", type=existing)
@click.argument("monad", type=existing)
@click.argument("strength", type=existing)
@click.option("--commutative/--no-commutative", default=False, help="Also check the commutativity hexagon.")
@bound_opt
@cap_opt
def check_localisable_cmd(category, monad, strength, commutative, bound, cap):
    """The six strength axioms (and optionally commutativity)."""
    from .io import encode_value
    from .localisable import LocalisableMonad, check_commutative, check_localisable

    _with_cap(cap)

    def body(run):
        ctx, m, sf = _load(run, category, monad, strength, bound=bound)
        rep = check_localisable(m, sf)
        first = rep.first_failure()
        run.check("localisable", lambda: (rep.ok, {
            "report": rep.to_json(),
            "first_failure": None if first is None else {"equation": first[0], "instance": encode_value(first[1])},
        }))
        if commutative:
            ok, triple = check_commutative(LocalisableMonad(ctx.smc, m, sf))
            run.check("commutative", lambda: (ok, {"counterexample": encode_value(triple)}))

    _guard("check-localisable", body)


@main.command()
@click.argument("category", type=existing)
@click.argument("monad", type=existing)
@click.argument("strength", type=existing)
@bound_opt
@cap_opt
def roundtrip(category, monad, strength, bound, cap):
    """Localisable to formal and back, and formal to localisable and back."""
    from .formal import localisable_to_formal, roundtrip_check
    from .localisable import LocalisableMonad

    _with_cap(cap)

    def body(run):
        ctx, m, sf = _load(run, category, monad, strength, bound=bound)
        lm = LocalisableMonad(ctx.smc, m, sf)
        r1 = roundtrip_check(lm)
        run.check("loc_formal_loc", lambda: (r1.ok, r1.to_json()))
        r2 = roundtrip_check(localisable_to_formal(lm))
        run.check("formal_loc_formal", lambda: (r2.ok, r2.to_json()))

    _guard("roundtrip", body)


@main.command("graded-indexed")
@click.argument("lattice", type=existing)
@click.option("--family", type=click.Choice(["closure", "writer"]), default="closure")
@cap_opt
def graded_indexed(lattice, family, cap):
    """Indexed to graded and back over a finite join-semilattice of grades."""
    from .formal import (check_graded, check_indexed, closure_family, graded_indexed_roundtrip, graded_to_indexed,
                         indexed_to_graded, writer_family)
    from .io import load_lattice, read_json

    _with_cap(cap)

    def body(run):
        doc = read_json(lattice)
        run.digest(lattice)
        E = load_lattice(doc)
        im = (closure_family if family == "closure" else writer_family)(E)
        gm = indexed_to_graded(im)
        for name, rep in (("indexed", check_indexed(im)), ("graded", check_graded(gm)),
                          ("indexed_again", check_indexed(graded_to_indexed(gm)))):
            run.check(name, lambda rep=rep: (rep.ok, {"report": rep.to_json()}))
        r = graded_indexed_roundtrip(im)
        run.check("roundtrip", lambda: (r.ok, r.to_json()))

    _guard("graded-indexed", body)


@main.command()
@click.argument("name", type=click.Choice(sorted(EXAMPLES)))
@click.option("--out", type=click.Path(file_okay=False), required=True, help="Directory for the JSON documents.")
@click.option("--param", "params", multiple=True, help="Builder parameter key=value (value parsed as JSON).")
@bound_opt
def example(name, out, params, bound):
    """Write a zoo example as category, monad and strength documents."""
    from .examples import write_example

    def body(run):
        extra = {}
        for p in params:
            key, sep, value = p.partition("=")
            if not sep:
                raise MalformedTable(f"--param expects key=value, got {p!r}")
            try:
                extra[key] = json.loads(value)
            except json.JSONDecodeError:
                extra[key] = value
        paths = write_example(name, Path(out), extra, bound)
        run.check("example", lambda: (True, {"name": name, "files": [str(p) for p in paths]}))

    _guard("example", body)


@main.command()
@click.argument("name", type=click.Choice(["acceptance", "negative", "paper-examples", "restrictions", "roundtrips"]))
@cap_opt
def suite(name, cap):
    """Run a named battery of acceptance checks."""
    from .suites import run_suite

    _with_cap(cap)

    def body(run):
        for r in run_suite(name):
            run.emit(r.to_json())

    _guard(f"suite {name}", body)


if __name__ == "__main__":
    main()
