"""
Command-line front end: ``python -m src.cli <command> ...``.

Exit statuses: 0 success, 1 a negative answer or a validation mismatch,
2 bad usage or input, 3 an exhausted search budget.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from src.census.pipeline import CensusConfig, emit_records, recompute_atd_records, run_census
from src.census.records import NameBook, RecordCalculator, recognise_generalised_wreath
from src.census.summary import census_summary, completeness_report
from src.config import BUDGETS, CENSUS_DEFAULTS, LOGGING, OUTPUT_FILES
from src.connectors.csv_output import format_field, read_csv, write_csv
from src.connectors.digraph_files import DigraphDirectory, read_digraph, write_digraph
from src.connectors.group_catalog import load_group_catalog
from src.digraphs.constructions import CosetSpec, coset_digraph, generalised_wreath, partial_line, wreath
from src.digraphs.digraph import underlying_graph
from src.errors import AtdError, BudgetExceededError, PreconditionError
from src.symmetry.automorphisms import are_isomorphic, canonical_form, is_self_opposite

logger = logging.getLogger(__name__)


def _read(path: str):
    return read_digraph(Path(path).read_text(encoding='utf-8'))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding='utf-8', newline='\n')
    else:
        sys.stdout.write(text)


# --- commands ---

def cmd_construct(args: argparse.Namespace) -> int:
    if args.family == 'wreath':
        D, name = wreath(args.n), f"W({args.n})"
    elif args.family == 'gwd':
        D, name = generalised_wreath(args.n, args.r), f"GWD({args.n};{args.r})"
    elif args.family == 'pl':
        source, source_name = _read(args.file)
        D, name = partial_line(source, args.r), f"Pl^{args.r}({source_name or args.file})"
    else:
        catalog = dict(load_group_catalog(args.catalog))
        for key in (args.group, args.subgroup, args.shunt):
            if key not in catalog:
                raise PreconditionError(f"'{key}' is not in {args.catalog}")
        G = catalog[args.group]
        shunt_group = catalog[args.shunt]
        if len(shunt_group.generators) != 1:
            raise PreconditionError(f"'{args.shunt}' must have exactly one generator, the shunt")
        spec = CosetSpec(G, list(catalog[args.subgroup].generators), shunt_group.generators[0])
        D, _ = coset_digraph(spec)
        name = f"Cos({args.group};{args.subgroup};{args.shunt})"
    _emit(write_digraph(D, name), args.out)
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    D, name = _read(args.file)
    name = name or Path(args.file).stem
    names = NameBook()
    cert = canonical_form(D).bytes
    names.digraphs[cert] = name
    params = recognise_generalised_wreath(D) if D.n <= CENSUS_DEFAULTS['GW_RECOGNITION_MAX_ORDER'] else None
    if params is not None:
        names.gw[cert] = params
        names.graphs[canonical_form(underlying_graph(D)).bytes] = params.name
    record = RecordCalculator(D, names).calculate_atd_record()
    for column, value in record.items():
        print(f"{column}: {format_field(value)}")
    return 0


def cmd_census(args: argparse.Namespace) -> int:
    cfg = CensusConfig(
        m=args.max_order,
        s_range=tuple(range(1, args.s_max + 1)) if args.s_max else None,
        index_cap=args.index_cap,
        jobs=args.jobs,
        gw_only=args.gw_only,
        catalog=load_group_catalog(args.catalog) if args.catalog else None,
    )
    result = run_census(cfg)
    atd, ghat, hat = emit_records(result)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    directory = DigraphDirectory(out / OUTPUT_FILES['DIGRAPH_DIR'])
    for entry in result.entries:
        directory.write(entry.digraph, entry.name, entry.provenance)
    for kind, frame in (('ATD', atd), ('GHAT', ghat), ('HAT', hat)):
        (out / OUTPUT_FILES[f'{kind}_CSV']).write_text(write_csv(kind, frame), encoding='utf-8', newline='\n')
    report = completeness_report(result.cells, cfg.m, result.complete_orders())
    (out / OUTPUT_FILES['COMPLETENESS_REPORT']).write_text(report, encoding='utf-8', newline='\n')

    summary = census_summary(atd, ghat, hat)
    logger.info("%d 2-ATDs (%d generalised wreath), %d arc-transitive GHATs, %d HATs written to %s",
                summary['atd_count'], summary['gw_count'], summary['arc_transitive_count'],
                summary['hat_count'], out)
    return 0


def cmd_iso(args: argparse.Namespace) -> int:
    (D1, _), (D2, _) = _read(args.first), _read(args.second)
    if are_isomorphic(D1, D2):
        print("isomorphic")
        return 0
    print("not isomorphic")
    return 1


def cmd_selfopp(args: argparse.Namespace) -> int:
    D, _ = _read(args.file)
    answer = is_self_opposite(D)
    print('yes' if answer else 'no')
    return 0 if answer else 1


def cmd_validate(args: argparse.Namespace) -> int:
    documents = DigraphDirectory(args.directory).by_name()
    table = read_csv(args.csv)
    recomputed = recompute_atd_records(documents)
    mismatches = 0
    for row in table.to_dict('records'):
        name = row['Name']
        if name not in recomputed:
            logger.error("%s: no digraph document", name)
            mismatches += 1
            continue
        for column, expected in row.items():
            actual = format_field(recomputed[name][column])
            if actual != expected:
                logger.error("%s: %s is %s in the CSV but recomputes to %s", name, column, expected, actual)
                mismatches += 1
    missing = sorted(set(recomputed) - set(table['Name']))
    for name in missing:
        logger.error("%s: digraph document without a CSV row", name)
    mismatches += len(missing)
    print(f"{len(table)} rows checked, {mismatches} mismatches")
    return 1 if mismatches else 0


# --- parser ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='atd', description="Census toolkit for 2-valent arc-transitive digraphs")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true', help="log debug messages")
    verbosity.add_argument('-q', '--quiet', action='store_true', help="log warnings and errors only")
    commands = parser.add_subparsers(dest='command', required=True)

    construct = commands.add_parser('construct', help="write a digraph document")
    families = construct.add_subparsers(dest='family', required=True)
    p = families.add_parser('wreath', help="the wreath digraph W_n")
    p.add_argument('n', type=int)
    p = families.add_parser('gwd', help="the generalised wreath digraph W(n, r)")
    p.add_argument('n', type=int)
    p.add_argument('r', type=int)
    p = families.add_parser('pl', help="the r-th partial line digraph of a digraph file")
    p.add_argument('file')
    p.add_argument('r', type=int)
    p = families.add_parser('coset', help="a coset digraph from catalog entries")
    p.add_argument('catalog', help="catalog file or bundled:<key>")
    p.add_argument('--group', required=True)
    p.add_argument('--subgroup', required=True)
    p.add_argument('--shunt', required=True, help="entry whose single generator is the shunt")
    for sub in families.choices.values():
        sub.add_argument('-o', '--out', help="output file (default: stdout)")
    construct.set_defaults(handler=cmd_construct)

    p = commands.add_parser('analyze', help="print the census record of a digraph file")
    p.add_argument('file')
    p.set_defaults(handler=cmd_analyze)

    p = commands.add_parser('census', help="run the census and write its files")
    p.add_argument('--max-order', type=int, required=True)
    p.add_argument('--s-max', type=int, default=None)
    p.add_argument('--index-cap', type=int, default=BUDGETS['QUOTIENT_MAX_INDEX'])
    p.add_argument('--gw-only', action='store_true')
    p.add_argument('--catalog', default=None, help="catalog file or bundled:<key>")
    p.add_argument('--jobs', type=int, default=CENSUS_DEFAULTS['JOBS'])
    p.add_argument('--out', default='census')
    p.set_defaults(handler=cmd_census)

    p = commands.add_parser('iso', help="decide isomorphism of two digraph files")
    p.add_argument('first')
    p.add_argument('second')
    p.set_defaults(handler=cmd_iso)

    p = commands.add_parser('selfopp', help="decide whether a digraph is self-opposite")
    p.add_argument('file')
    p.set_defaults(handler=cmd_selfopp)

    p = commands.add_parser('validate', help="recompute an ATD CSV from digraph documents")
    p.add_argument('directory')
    p.add_argument('csv')
    p.set_defaults(handler=cmd_validate)
    return parser


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else LOGGING['LEVEL']
    logging.basicConfig(level=level, format=LOGGING['FORMAT'])


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    configure_logging(args.verbose, args.quiet)
    try:
        return args.handler(args)
    except BudgetExceededError as exc:
        logger.error("Search budget exhausted: %s", exc)
        return 3
    except (AtdError, OSError) as exc:
        logger.error("%s", exc)
        return 2


if __name__ == '__main__':
    sys.exit(main())
