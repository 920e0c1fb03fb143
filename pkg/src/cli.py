"""
Batch command-line interface.

Every command builds a report `{command, inputs, results, status}` and prints
it as sorted-key JSON on stdout. Exit status is 0 for ok, eliminated and
not_found, 1 for a mathematical failure and 2 for usage or IO problems.
"""

import argparse
import hashlib
import logging
import sqlite3
import sys
from typing import Any, Callable, Dict, IO, List, Optional, Sequence

from src import __version__
from src.config_manager import ConfigManager
from src.database import Database
from src.designs import (IncidenceStructure, is_flag_transitive, subdegree_report,
                         table1_catalog, verify_2design, verify_catalog, verify_catalog_entry)
from src.errors import (FlagrepError, FormatError, InvalidConfig, MismatchDetected, NotADesign,
                        NotAnAutomorphismGroup, NotTransitive, Unsupported)
from src.feasibility import (VerdictKind, block_size_candidates, derive_params,
                             enumerate_feasible, primitive_divisor_candidates)
from src.file_manager import (file_digest, incidence_text, load_design, load_generators,
                              load_snapshot, save_design, write_csv)
from src.geometry import (gl_generators, induced_action, pg_flats, pg_points, set_max_field_order,
                          wbs_design)
from src.permgroup import PermutationGroup
from src.tables import check_rows, check_table2, csv_rows, CSV_HEADER, evaluate_table, sp44_case
from src.ui_manager import LOG_LEVELS, UIManager, dump_json, setup_logging

logger = logging.getLogger(__name__)

OK, ELIMINATED, NOT_FOUND, ERROR = 'ok', 'eliminated', 'not_found', 'error'
EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

# errors that mean "the mathematics disagrees" rather than "bad input"
_MATH_ERRORS = (MismatchDetected, NotADesign, NotAnAutomorphismGroup, NotTransitive)

_ALL_TABLES = ('1', '2', '3', '4', '5', '6', '7')


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def _int_list(text: str) -> List[int]:
    try:
        values = [int(x) for x in text.split(',') if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("the list is empty")
    return values


def _design_selector(text: str) -> str:
    if text in ('pg', 'pg-planes', 'wbs'):
        return text
    if text.startswith('table1:') and text[len('table1:'):].isdigit():
        return text
    raise argparse.ArgumentTypeError(f"expected pg, pg-planes, wbs or table1:<line>, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='flagrep',
        description='Flag-transitive 2-designs with prime replication number')
    parser.add_argument('--version', action='version', version=f'flagrep {__version__}')
    parser.add_argument('--config', metavar='PATH', default='data/config.ini',
                        help='INI configuration file')
    parser.add_argument('--log-level', type=str.upper, choices=LOG_LEVELS, metavar='LEVEL',
                        help='logging level: ' + ', '.join(LOG_LEVELS) + ' (default from config)')
    parser.add_argument('--pretty', action='store_true', help='rich tables on stderr')
    parser.add_argument('--no-store', action='store_true', help='skip the sqlite run ledger')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('feasible', help='group-free feasible parameter tuples')
    p.add_argument('--max-v', type=_positive_int, required=True)
    p.add_argument('--max-lambda', type=_positive_int, required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument('--json', action='store_true', help='JSON report (default)')
    fmt.add_argument('--csv', action='store_true', help='CSV rows v,b,r,k,lambda')

    p = sub.add_parser('verify-tables', help='recompute the embedded tables')
    p.add_argument('--table', choices=_ALL_TABLES + ('all',), required=True)
    p.add_argument('--q-grid', type=_int_list, help='comma-separated q values')

    p = sub.add_parser('construct', help='build and verify a design')
    p.add_argument('--design', type=_design_selector, required=True)
    p.add_argument('--q', type=_positive_int)
    p.add_argument('--d', type=_positive_int)
    p.add_argument('--out', metavar='PATH', help='also save the design JSON here')
    p.add_argument('--incidence', action='store_true', help='include the 0/1 incidence matrix')

    p = sub.add_parser('check', help='verify a design file, optionally against a group')
    p.add_argument('--in', dest='input', metavar='PATH', required=True)
    p.add_argument('--group', metavar='PATH')

    p = sub.add_parser('params', help='parameter tuples for given v and r')
    p.add_argument('--v', type=_positive_int, required=True)
    p.add_argument('--r', type=_positive_int, required=True)

    p = sub.add_parser('candidates', help='primitive prime divisor candidates for r')
    p.add_argument('--n', type=_positive_int, required=True)
    p.add_argument('--q', type=_positive_int, required=True)

    p = sub.add_parser('export-rows', help='dataset rows as CSV')
    p.add_argument('--table', choices=_ALL_TABLES[2:] + ('all',), required=True)
    p.add_argument('--q-grid', type=_int_list)
    p.add_argument('--out', metavar='PATH')
    return parser


class FlagrepApp:
    """Runs one command against a configuration, a UI and an optional store."""

    def __init__(self, config: ConfigManager, ui: UIManager, store: Optional[Database] = None):
        self.config = config
        self.ui = ui
        self.store = store
        self.threads = config.threads()
        tables = config.get_table_settings()
        self.q_grid = tables['q_grid']
        self.n_grid = tables['dimension_grid']
        self.search = config.get_search_settings()
        set_max_field_order(self.search['max_field_order'])

    def dispatch(self, args: argparse.Namespace) -> Optional[Dict[str, Any]]:
        handlers: Dict[str, Callable[[argparse.Namespace], Optional[Dict[str, Any]]]] = {
            'feasible': self.cmd_feasible,
            'verify-tables': self.cmd_verify_tables,
            'construct': self.cmd_construct,
            'check': self.cmd_check,
            'params': self.cmd_params,
            'candidates': self.cmd_candidates,
            'export-rows': self.cmd_export_rows,
        }
        return handlers[args.command](args)

    # commands

    def cmd_feasible(self, args) -> Optional[Dict[str, Any]]:
        rows = enumerate_feasible(args.max_v, args.max_lambda)
        if args.csv:
            write_csv(self.ui.stdout or sys.stdout, ['v', 'b', 'r', 'k', 'lambda'],
                      (p.as_tuple() for p in rows))
            self.record_run('feasible', {'max_v': args.max_v, 'max_lambda': args.max_lambda}, OK)
            return None
        self.ui.show_rows("Feasible parameters", ['v', 'b', 'r', 'k', 'lambda'],
                          [p.as_tuple() for p in rows])
        return _report('feasible', {'max_v': args.max_v, 'max_lambda': args.max_lambda},
                       {'count': len(rows), 'params': [p.to_dict() for p in rows]}, OK)

    def cmd_verify_tables(self, args) -> Dict[str, Any]:
        q_grid = args.q_grid or self.q_grid
        selected = _ALL_TABLES if args.table == 'all' else (args.table,)
        results: Dict[str, Any] = {}
        mismatches: List[Dict[str, Any]] = []
        for table in selected:
            result, bad = self._verify_table(table, q_grid)
            results[table] = result
            mismatches.extend(bad)
        if args.table == 'all':
            results['psp4_4'] = sp44_case()
        inputs = {'table': args.table, 'q_grid': q_grid}
        if mismatches:
            raise MismatchDetected(f"{len(mismatches)} row(s) disagree with the printed tables",
                                   mismatches)
        return _report('verify-tables', inputs, results, OK)

    def _verify_table(self, table: str, q_grid: Sequence[int]):
        if table == '1':
            return self._verify_table1()
        if table == '2':
            report = check_table2()
            self.ui.show_rows("Minimal degrees", ['group', 'printed', 'computed', 'status'],
                              [[r['group'], r['printed'], r['computed'], r['status']] for r in report],
                              highlight='match')
            return {'rows': report}, [dict(r, table='2') for r in report if r['status'] != 'match']
        evaluated = evaluate_table(table, q_grid, self.n_grid, self.threads)
        entries, mismatches = check_rows(evaluated)
        summary = {kind.value: 0 for kind in VerdictKind}
        for _, verdict in evaluated:
            summary[verdict.kind.value] += 1
        self.ui.show_rows(f"Table {table}", CSV_HEADER, csv_rows(evaluated), highlight='Eliminated')
        return {'rows': entries, 'summary': summary}, mismatches

    def _frozen_blocks(self) -> Dict[int, List[int]]:
        frozen = {}
        snapshot_path = self.config.get_storage_settings()['snapshot_path']
        try:
            frozen.update(load_snapshot(snapshot_path))
        except FormatError as e:
            logger.warning("ignoring snapshot: %s", e.message)
        if self.store is not None:
            frozen.update(self.store.get_base_blocks())
        return frozen

    def _verify_table1(self):
        frozen = self._frozen_blocks()
        checks = verify_catalog(table1_catalog(), frozen, self.threads,
                                self.search['max_base_block_candidates'])
        for check in checks:
            if self.store is not None and check.base_block is not None \
                    and check.entry.line not in frozen:
                self.store.freeze_base_block(check.entry.line, check.entry.degree, check.entry.k,
                                             check.entry.lam, check.base_block)
        rows = [c.to_dict() for c in checks]
        self.ui.show_rows("Table 1", ['line', 'socle', 'params', 'flag-transitive', 'ok'],
                          [[r['line'], r['socle'], str(c.verified.params if c.verified else None),
                            r['flag_transitive'], r['ok']] for r, c in zip(rows, checks)],
                          highlight='True')
        return {'rows': rows}, [dict(r, table='1') for r in rows if not r['ok']]

    def cmd_construct(self, args) -> Dict[str, Any]:
        design = args.design
        inputs: Dict[str, Any] = {'design': design}
        group: Optional[PermutationGroup] = None
        extra: Dict[str, Any] = {}
        if design in ('pg', 'pg-planes'):
            d, q = _require(args, 'd'), _require(args, 'q')
            inputs.update(d=d, q=q)
            flat_dim = 1 if design == 'pg' else d - 1
            points = pg_points(d, q)
            structure = IncidenceStructure.from_blocks(len(points), pg_flats(d, q, flat_dim))
            if len(points) <= self.search['max_degree']:
                group = induced_action(gl_generators(d + 1, q), points, q)
        elif design == 'wbs':
            q = _require(args, 'q')
            inputs['q'] = q
            structure = wbs_design(q)
        else:
            line = int(design.split(':', 1)[1])
            catalog = {e.line: e for e in table1_catalog()}
            if line not in catalog:
                raise Unsupported(f"no catalog line {line}; lines are {sorted(catalog)}",
                                  {'line': line})
            check = verify_catalog_entry(catalog[line], self._frozen_blocks().get(line),
                                         self.search['max_base_block_candidates'])
            if check.verified is None:
                return _report('construct', inputs, check.to_dict(), NOT_FOUND)
            structure = check.verified.structure
            extra = {'catalog': check.to_dict()}
            group = catalog[line].group()

        verified = verify_2design(structure)
        if verified.params is not None and not verified.r_prime:
            logger.warning("r = %d is not prime", verified.params.r)
        results = {'design': structure.to_dict(), 'verified': verified.to_dict()}
        results.update(extra)
        if group is not None:
            results['flag_transitive'] = is_flag_transitive(group, structure)
        if args.incidence:
            results['incidence'] = incidence_text(structure)
        if args.out:
            save_design(args.out, structure)
            results['saved_to'] = args.out
        self.ui.show_design(f"construct {design}", {'params': results['verified']['params'],
                                                     'r_prime': verified.r_prime,
                                                     'flag_transitive': results.get('flag_transitive')})
        return _report('construct', inputs, results, OK)

    def cmd_check(self, args) -> Dict[str, Any]:
        inputs = {'in': args.input, 'group': args.group}
        structure = load_design(args.input)
        verified = verify_2design(structure)
        results: Dict[str, Any] = {'verified': verified.to_dict()}
        if args.group:
            group = load_generators(args.group, self.search['max_degree'])
            results.update(_group_report(group, structure, verified))
        self.ui.show_design(f"check {args.input}", results)
        return _report('check', inputs, results, OK, digest=file_digest(args.input))

    def cmd_params(self, args) -> Dict[str, Any]:
        params = derive_params(args.v, args.r)
        results = {
            'v': args.v,
            'r': args.r,
            'block_size_candidates': block_size_candidates(args.v, args.r),
            'params': [p.to_dict() for p in params],
        }
        return _report('params', {'v': args.v, 'r': args.r}, results, OK if params else NOT_FOUND)

    def cmd_candidates(self, args) -> Dict[str, Any]:
        try:
            found = primitive_divisor_candidates(args.n, args.q)
        except ValueError as e:
            raise Unsupported(str(e), {'n': args.n}) from e
        results = {
            'v': (args.q ** args.n - 1) // (args.q - 1),
            'candidates': [{'r': r, 'params': [p.to_dict() for p in params]} for r, params in found],
        }
        status = OK if any(params for _, params in found) else ELIMINATED
        return _report('candidates', {'n': args.n, 'q': args.q}, results, status)

    def cmd_export_rows(self, args) -> Optional[Dict[str, Any]]:
        q_grid = args.q_grid or self.q_grid
        selected = _ALL_TABLES[2:] if args.table == 'all' else (args.table,)
        rows: List[List[Any]] = []
        for table in selected:
            rows.extend(csv_rows(evaluate_table(table, q_grid, self.n_grid, self.threads)))
        inputs = {'table': args.table, 'q_grid': q_grid}
        if not args.out:
            write_csv(self.ui.stdout or sys.stdout, CSV_HEADER, rows)
            self.record_run('export-rows', inputs, OK)
            return None
        count = write_csv(args.out, CSV_HEADER, rows)
        return _report('export-rows', inputs, {'rows': count, 'out': args.out}, OK,
                       digest=file_digest(args.out))

    def record_run(self, command: str, inputs: Dict[str, Any], status: str, digest: Optional[str] = None):
        if self.store is not None:
            self.store.record_run(command, inputs, status, digest)


def _require(args: argparse.Namespace, name: str) -> int:
    value = getattr(args, name)
    if value is None:
        raise FormatError(f"--{name} is required for --design {args.design}", {'flag': name})
    return value


def _group_report(group: PermutationGroup, structure: IncidenceStructure, verified) -> Dict[str, Any]:
    result: Dict[str, Any] = {
        'group_order': str(group.order()),
        'automorphism': True,
        'flag_transitive': is_flag_transitive(group, structure),
        'transitive': group.is_transitive(),
    }
    if result['transitive']:
        result['primitive'] = group.is_primitive()
        if verified.params is not None:
            result.update(subdegree_report(group, verified.params.r))
    return result


def _report(command: str, inputs: Dict[str, Any], results: Any, status: str,
            digest: Optional[str] = None) -> Dict[str, Any]:
    report = {'command': command, 'inputs': inputs, 'results': results, 'status': status}
    if digest is not None:
        report['digest'] = digest
    return report


def _exit_code(status: str) -> int:
    return EXIT_OK if status in (OK, ELIMINATED, NOT_FOUND) else EXIT_MISMATCH


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[IO[str]] = None) -> int:
    """Parse argv, run one command and return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    inputs = {k: v for k, v in vars(args).items()
              if k not in ('config', 'log_level', 'pretty', 'no_store')}
    config = ConfigManager(args.config)
    output = config.get_output_settings()
    ui = UIManager(pretty=args.pretty or output['pretty'], indent=output['indent'], stdout=stdout)
    setup_logging(args.log_level or 'WARNING')
    if not config.validate_config():
        error = InvalidConfig(f"invalid configuration in {args.config}", {'config': args.config})
        ui.show_error(error.message)
        ui.emit_json(_report(args.command, inputs, error.to_dict(), ERROR))
        return EXIT_USAGE
    if not args.log_level:
        setup_logging(output['log_level'])

    store = None
    storage = config.get_storage_settings()
    if storage['enabled'] and not args.no_store:
        try:
            store = Database(storage['db_path'])
        except (sqlite3.Error, OSError) as e:
            logger.warning("run ledger unavailable: %s", e)

    app = FlagrepApp(config, ui, store)
    try:
        report = app.dispatch(args)
    except _MATH_ERRORS as e:
        report = _report(args.command, inputs, e.to_dict(), ERROR)
        ui.show_error(e.message)
        code = EXIT_MISMATCH
    except FlagrepError as e:
        report = _report(args.command, inputs, e.to_dict(), ERROR)
        ui.show_error(e.message)
        code = EXIT_USAGE
    except OSError as e:
        report = _report(args.command, inputs, {'error': type(e).__name__, 'message': str(e)}, ERROR)
        ui.show_error(str(e))
        code = EXIT_USAGE
    else:
        if report is None:
            return EXIT_OK
        code = _exit_code(report['status'])

    ui.emit_json(report)
    digest = report.get('digest') or hashlib.md5(dump_json(report['results']).encode('utf-8')).hexdigest()
    app.record_run(report['command'], report['inputs'], report['status'], digest)
    return code
