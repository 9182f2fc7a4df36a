"""Command-line frontend.

    kfq short --cartan C2 --lambda 0,1 --mu 0,0
    kfq gkf --cartan A2 --lambda 1,1 --mu 0,0 --psi height:2
    kfq verify --suite main-theorem --cartan C2 --mu-box 3 --lambda-cap 8

Every response is one JSON line (or a short text rendering) that echoes the
normalised request.  Polynomials are ascending coefficient lists, weight
maps are keyed by comma-joined fundamental coordinates.

Exit codes: 0 success, 1 domain error (bad weights, unknown type, invalid
identity parameters), 2 resource limit (Weyl group above the limit).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Iterator

from .charring import branch_to_long, freudenthal, h_labels, tensor_decompose
from .config import DEFAULT
from .qanalogue import gkf
from .rootsys import RootSystemError, build_root_system, format_weight, parse_weight
from .shorthl import CATALOGUE, e_series, short_hl, t_poly, verify_identity
from .verify import DEFAULT_TYPES, SUITES, catalogue, run_suite
from .weyl import WeylLimitError, generate

EXIT_OK, EXIT_DOMAIN, EXIT_LIMIT = 0, 1, 2

COMMANDS = ("gkf", "lusztig", "short", "hl", "eseries", "branch", "weights", "tensor", "verify")

# request fields in echo order, with the flag that sets each one
_FIELDS = (("cartan", "--cartan"), ("lambda", "--lambda"), ("mu", "--mu"), ("psi", "--psi"),
           ("suite", "--suite"), ("lambda_cap", "--lambda-cap"), ("mu_box", "--mu-box"),
           ("truncation", "--truncation"), ("weyl_limit", "--weyl-limit"), ("params", "--param"))


class UsageError(RootSystemError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {n}")
    return n


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--cartan", help="type label such as C2, G2, B3")
    common.add_argument("--lambda", dest="lam", help="weight a,b,... in fundamental coordinates")
    common.add_argument("--mu", help="weight a,b,... in fundamental coordinates")
    common.add_argument("--psi", default=None,
                        help="positive | short | height:k | ideal:i+j | file:PATH")
    common.add_argument("--lambda-cap", type=_positive)
    common.add_argument("--mu-box", type=_nonneg)
    common.add_argument("--truncation", type=_nonneg)
    common.add_argument("--weyl-limit", type=_positive)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timing", action="store_true",
                        help="add wall-clock seconds to each response (breaks byte-identity)")

    parser = _Parser(prog="kfq", description="Generalised Kostka-Foulkes polynomials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "gkf": "signed Weyl sum for an arbitrary multiset --psi",
        "lusztig": "Lusztig's q-analogue (psi = positive roots)",
        "short": "short q-analogue (psi = short positive roots)",
        "hl": "short Hall-Littlewood polynomial in the character basis",
        "eseries": "E-series of an H-dominant weight, truncated at height --truncation",
        "branch": "restriction of V(lambda) to the long-root subgroup",
        "weights": "weight multiplicities of V(lambda)",
        "tensor": "V(lambda) x V(mu) decomposed",
        "verify": "run a verification suite, the catalogue, or one identity",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "verify":
            p.add_argument("--suite", required=True,
                           help="suite name, 'catalogue', 'all', or an identity name")
            p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                           help="extra identity parameter (for example form=q or pi=1,0)")
    return parser


# -- request normalisation ------------------------------------------------------

def _weight(rs, text, name):
    if text is None:
        raise UsageError(f"--{name} is required")
    return parse_weight(text, rs.rank)


def _parse_params(items) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise UsageError(f"--param expects KEY=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        if "," in v or (k in ("lambda", "mu", "pi") and v.lstrip("-").isdigit()):
            out[k] = list(parse_weight(v))
        elif v.lstrip("-").isdigit():
            out[k] = int(v)
        else:
            out[k] = v
    return out


def normalise(args) -> dict:
    """The request as a plain dict, in a fixed field order."""
    req = {"command": args.command}
    if args.command != "verify" and not args.cartan:
        raise UsageError("--cartan is required")
    rs = build_root_system(args.cartan) if args.cartan else None
    if args.command in ("gkf", "lusztig", "short", "branch", "weights", "hl", "tensor"):
        req["lambda"] = list(_weight(rs, args.lam, "lambda"))
    if args.command in ("gkf", "lusztig", "short", "tensor"):
        req["mu"] = list(_weight(rs, args.mu, "mu"))
    if args.command == "eseries":
        req["mu"] = list(parse_weight(args.mu, rs.rank)) if args.mu else [0] * rs.rank
        req["truncation"] = args.truncation if args.truncation is not None else DEFAULT.truncation
    if args.command == "gkf":
        req["psi"] = args.psi or "positive"
    elif args.psi is not None:
        raise UsageError(f"--psi only applies to gkf, not {args.command}")
    if args.command == "verify":
        req["suite"] = args.suite
        if args.lam:
            req["lambda"] = list(parse_weight(args.lam, rs.rank if rs else None))
        if args.mu:
            req["mu"] = list(parse_weight(args.mu, rs.rank if rs else None))
        for key in ("lambda_cap", "mu_box", "truncation"):
            if getattr(args, key) is not None:
                req[key] = getattr(args, key)
        if args.param:
            req["params"] = _parse_params(args.param)
    if args.cartan:
        req["cartan"] = rs.label
    if args.weyl_limit is not None:
        req["weyl_limit"] = args.weyl_limit
    return {k: req[k] for k in ("command", *(f for f, _ in _FIELDS)) if k in req}


def request_argv(req: dict) -> list[str]:
    """Command-line arguments that reproduce ``req``."""
    argv = [req["command"]]
    for key, flag in _FIELDS:
        if key not in req:
            continue
        v = req[key]
        if key == "params":
            for k, x in v.items():
                argv += [flag, f"{k}={format_weight(x) if isinstance(x, list) else x}"]
        elif isinstance(v, list):
            argv += [f"{flag}={format_weight(v)}"]
        else:
            argv += [flag, str(v)]
    return argv


# -- dispatch -------------------------------------------------------------------

def _wmap(d: dict) -> dict:
    out = {}
    for w, v in sorted(d.items()):
        out[format_weight(w)] = v.to_list() if hasattr(v, "to_list") else v
    return out


def _single(req: dict) -> dict:
    rs = build_root_system(req["cartan"])
    generate(rs, req.get("weyl_limit"))
    cmd = req["command"]
    lam = tuple(req.get("lambda", ()))
    mu = tuple(req.get("mu", ()))
    if cmd in ("gkf", "lusztig", "short"):
        psi = {"lusztig": "positive", "short": "short"}.get(cmd, req.get("psi"))
        return {"coeffs": gkf(rs, lam, mu, psi).to_list(), "truncation": None}
    if cmd == "hl":
        p = short_hl(rs, lam)
        return {"character": p.to_json(), "t_lambda": t_poly(rs, lam).to_list(), "truncation": None}
    if cmd == "eseries":
        D = req["truncation"]
        series = e_series(rs, mu, D)
        return {"terms": series.character.to_json(), "truncation": D,
                "note": f"terms with height(lambda - mu) <= {D}"}
    if cmd == "weights":
        return {"multiplicities": _wmap(freudenthal(rs, lam)), "truncation": None}
    if cmd == "branch":
        b = branch_to_long(rs, lam)
        labels = h_labels(rs, b)
        return {"multiplicities": _wmap(b), "h_labels": _wmap(labels), "truncation": None}
    if cmd == "tensor":
        return {"decomposition": tensor_decompose(rs, lam, mu).to_json(), "truncation": None}
    raise UsageError(f"unknown command {cmd!r}")


def _verify(req: dict) -> Iterator[dict]:
    suite = req["suite"]
    cfg = DEFAULT.with_overrides(mu_box=req.get("mu_box"), lambda_cap=req.get("lambda_cap"),
                                 truncation=req.get("truncation"),
                                 weyl_limit=req.get("weyl_limit"))
    if suite in CATALOGUE:
        if "cartan" not in req and suite != "g2-remark":
            raise UsageError("--cartan is required for a single identity")
        params = {k: req[k] for k in ("cartan", "lambda", "mu", "truncation") if k in req}
        params.update(req.get("params", {}))
        if "cartan" in params:
            generate(build_root_system(params["cartan"]), req.get("weyl_limit"))
        yield verify_identity(suite, params).as_dict()
        return
    if suite == "all":
        names = [*SUITES, "catalogue"]
    elif suite in SUITES or suite == "catalogue":
        names = [suite]
    else:
        known = ", ".join([*SUITES, "catalogue", "all", *CATALOGUE])
        raise UsageError(f"unknown suite {suite!r}; known: {known}")
    for name in names:
        labels = (req["cartan"],) if "cartan" in req else DEFAULT_TYPES[name]
        for label in labels:
            rs = build_root_system(label)
            generate(rs, req.get("weyl_limit"))
            if name == "catalogue":
                for rep in catalogue(rs, cfg):
                    yield rep.as_dict()
            else:
                yield run_suite(name, label, cfg).as_dict()


def _glue_negative(argv: list[str]) -> list[str]:
    """``--mu -2,2`` -> ``--mu=-2,2`` so argparse does not read -2,2 as a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("--lambda", "--mu"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def run(argv: list[str] | None = None, out=None) -> int:
    """Parse, dispatch, print; returns the process exit code."""
    out = out or sys.stdout
    fmt = "json"
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_glue_negative(argv))
        fmt = args.format
        req = normalise(args)
        started = time.perf_counter()
        results = _verify(req) if req["command"] == "verify" else iter([_single(req)])
        for payload in results:
            doc = {"request": req, **payload}
            doc.pop("elapsed", None)
            if args.timing:
                doc["elapsed"] = round(time.perf_counter() - started, 6)
            _emit(doc, fmt, out)
            out.flush()
    except WeylLimitError as exc:
        _error(exc, EXIT_LIMIT, fmt)
        return EXIT_LIMIT
    except MemoryError as exc:
        _error(exc or "out of memory", EXIT_LIMIT, fmt)
        return EXIT_LIMIT
    except (RootSystemError, argparse.ArgumentTypeError, ValueError) as exc:
        _error(exc, EXIT_DOMAIN, fmt)
        return EXIT_DOMAIN
    return EXIT_OK


def _error(exc, code: int, fmt: str) -> None:
    kind = "resource-limit" if code == EXIT_LIMIT else "domain"
    if fmt == "json":
        print(json.dumps({"error": kind, "message": str(exc), "exit": code}), file=sys.stderr)
    else:
        print(f"kfq: {kind} error: {exc}", file=sys.stderr)


def _emit(doc: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, separators=(",", ":")) + "\n")
        return
    req = doc["request"]
    head = " ".join(f"{k}={format_weight(v) if isinstance(v, list) else v}"
                    for k, v in req.items() if k != "params")
    lines = [head]
    for key, val in doc.items():
        if key == "request":
            continue
        if isinstance(val, dict) and val and all(isinstance(v, (int, list)) for v in val.values()):
            lines.append(f"{key}:")
            lines += [f"  {w}: {v}" for w, v in val.items()]
        else:
            lines.append(f"{key}: {json.dumps(val)}")
    out.write("\n".join(lines) + "\n")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
