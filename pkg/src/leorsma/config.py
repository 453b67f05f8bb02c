"""
Run configuration: flat ``key = value`` files, unit suffixes, CSV output
and run manifests.

Physical values may carry an explicit unit (``600 km``, ``2 GHz``,
``7.5 cm``, ``16 dBi``, ``20 dBW``, ``100 W``). A bare number is read in
the base unit of the key (meters, hertz, dB).
"""

from dataclasses import asdict, fields
import csv
import datetime
import io
import json
import math
import re

from .experiment import (SweepConfig, RatePoint, SweepResult,
                         default_alpha_grid, default_distance_grid)
from .scenario import Scenario, linear_to_db

__all__ = ['ConfigError', 'parse_config', 'parse_config_text', 'parse_quantity',
           'RATES_HEADER', 'CORRELATION_HEADER', 'format_float',
           'write_rates_csv', 'read_rates_csv', 'write_correlation_csv',
           'read_correlation_csv', 'rows_from_csv', 'make_manifest',
           'load_manifest', 'dump_manifest']


class ConfigError(ValueError):
    """Invalid configuration: unknown key, bad unit or out-of-range value."""


_LENGTH = {'m': 1.0, 'km': 1e3, 'cm': 1e-2, 'mm': 1e-3}
_FREQUENCY = {'hz': 1.0, 'khz': 1e3, 'mhz': 1e6, 'ghz': 1e9}
_GAIN = {'db': None, 'dbi': None}

_SCENARIO_KEYS = {
    'user_count': 'int',
    'altitude': 'length',
    'carrier_frequency': 'frequency',
    'antenna_count': 'int',
    'antenna_spacing': 'length',
    'sat_gain_db': 'gain',
    'user_gain_db': 'gain',
    'noise_power_dbw': 'power',
    'transmit_power_dbw': 'power',
    'user_distances': 'length_list',
}
_SWEEP_KEYS = {
    'distance_grid': 'length_list',
    'distance_min': 'length',
    'distance_max': 'length',
    'distance_points': 'int',
    'distance_spacing': 'str',
    'extra_distances': 'length_list',
    'alpha_grid': 'float_list',
    'alpha_step': 'float',
    'iterations': 'int',
    'delta_eps': 'float',
    'seed': 'int',
    'schemes': 'str_list',
    'fixed_alphas': 'float_list',
    'iteration_overrides': 'overrides',
}
KNOWN_KEYS = tuple(_SCENARIO_KEYS) + tuple(_SWEEP_KEYS)

_QUANTITY = re.compile(r'^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z]*)\s*$')


def parse_quantity(text, kind, key='value'):
    """Parse ``'<number> [unit]'`` into the base unit for `kind`.

    `kind` is one of 'length', 'frequency', 'gain' or 'power'. Powers are
    returned in dBW.
    """
    m = _QUANTITY.match(str(text))
    if not m:
        raise ConfigError("{0}: cannot parse {1!r} as a number".format(key, text))
    value = float(m.group(1))
    unit = m.group(2).lower()
    if kind == 'length':
        if unit and unit not in _LENGTH:
            raise ConfigError("{0}: unknown length unit {1!r} (use m, km, cm, "
                              "mm)".format(key, m.group(2)))
        return value * _LENGTH.get(unit, 1.0)
    if kind == 'frequency':
        if unit and unit not in _FREQUENCY:
            raise ConfigError("{0}: unknown frequency unit {1!r} (use Hz, kHz, "
                              "MHz, GHz)".format(key, m.group(2)))
        return value * _FREQUENCY.get(unit, 1.0)
    if kind == 'gain':
        if unit and unit not in _GAIN:
            raise ConfigError("{0}: unknown gain unit {1!r} (use dBi)".format(
                key, m.group(2)))
        return value
    if kind == 'power':
        if unit in ('', 'dbw'):
            return value
        if unit == 'dbm':
            return value - 30.0
        if unit in ('w', 'mw'):
            watts = value * (1e-3 if unit == 'mw' else 1.0)
            if watts <= 0:
                raise ConfigError("{0}: power must be > 0 W".format(key))
            return linear_to_db(watts)
        raise ConfigError("{0}: unknown power unit {1!r} (use dBW, dBm, W, "
                          "mW)".format(key, m.group(2)))
    raise ValueError(kind)


def _split(text):
    return [item.strip() for item in str(text).split(',') if item.strip()]


def _parse_int(text, key):
    try:
        value = float(text)
    except ValueError:
        raise ConfigError("{0}: expected an integer, got {1!r}".format(key, text))
    if not value.is_integer():
        raise ConfigError("{0}: expected an integer, got {1!r}".format(key, text))
    return int(value)


def _parse_float(text, key):
    try:
        return float(text)
    except ValueError:
        raise ConfigError("{0}: expected a number, got {1!r}".format(key, text))


def _parse_value(key, kind, text):
    if kind == 'int':
        return _parse_int(text, key)
    if kind == 'float':
        return _parse_float(text, key)
    if kind == 'str':
        return str(text).strip()
    if kind == 'str_list':
        return _split(text)
    if kind == 'float_list':
        return [_parse_float(t, key) for t in _split(text)]
    if kind == 'length_list':
        return [parse_quantity(t, 'length', key) for t in _split(text)]
    if kind == 'overrides':
        pairs = []
        for item in _split(text):
            if ':' not in item:
                raise ConfigError("{0}: expected 'distance:iterations', got "
                                  "{1!r}".format(key, item))
            d, n = item.rsplit(':', 1)
            pairs.append((parse_quantity(d, 'length', key), _parse_int(n, key)))
        return pairs
    return parse_quantity(text, kind, key)


def _read_pairs(text, source):
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError("{0}:{1}: expected 'key = value'".format(
                source, lineno))
        key, value = line.split('=', 1)
        pairs.append((key.strip(), value.strip()))
    return pairs


def _resolve(values):
    scenario_args = {k: values[k] for k in _SCENARIO_KEYS if k in values}
    k = scenario_args.get('user_count', 2)
    scenario_args.setdefault('user_distances', [0.0] * max(int(k), 0))
    try:
        scenario = Scenario(**scenario_args)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc))

    if 'distance_grid' in values:
        grid = list(values['distance_grid'])
    else:
        start = values.get('distance_min', 500.0)
        stop = values.get('distance_max', 200e3)
        points = values.get('distance_points', 80)
        spacing = values.get('distance_spacing', 'log')
        if points < 1:
            raise ConfigError("distance_points: must be >= 1 (got {0})".format(
                points))
        if not 0 < start <= stop:
            raise ConfigError("distance_min/distance_max: need 0 < min <= max "
                              "(got {0}, {1})".format(start, stop))
        if spacing == 'log':
            grid = list(default_distance_grid(start, stop, points))
        elif spacing == 'linear':
            step = (stop - start) / (points - 1) if points > 1 else 0.0
            grid = [start + i * step for i in range(points)]
        else:
            raise ConfigError("distance_spacing: expected 'log' or 'linear', "
                              "got {0!r}".format(spacing))
    grid = sorted(set(grid) | set(values.get('extra_distances', [])))

    if 'alpha_grid' in values:
        alphas = values['alpha_grid']
    else:
        try:
            alphas = default_alpha_grid(values.get('alpha_step', 0.01))
        except ValueError as exc:
            raise ConfigError("alpha_step: {0}".format(exc))

    sweep_args = dict(distance_grid=grid, alpha_grid=alphas)
    for key in ('iterations', 'delta_eps', 'seed', 'schemes', 'fixed_alphas',
                'iteration_overrides'):
        if key in values:
            sweep_args[key] = values[key]
    try:
        sweep = SweepConfig(**sweep_args)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc))
    return scenario, sweep


def parse_config_text(text='', overrides=(), source='<config>'):
    """Like :func:`parse_config` but from a string."""
    values = {}
    pairs = _read_pairs(text, source)
    for item in overrides:
        if '=' not in item:
            raise ConfigError("override {0!r}: expected key=value".format(item))
        key, value = item.split('=', 1)
        pairs.append((key.strip(), value.strip()))
    for key, text_value in pairs:
        kind = _SCENARIO_KEYS.get(key) or _SWEEP_KEYS.get(key)
        if kind is None:
            raise ConfigError("unknown key {0!r}".format(key))
        values[key] = _parse_value(key, kind, text_value)
    return _resolve(values)


def parse_config(path=None, overrides=()):
    """Scenario and sweep from an optional config file plus ``key=value`` overrides.

    Anything not given keeps its default: the reference system parameters,
    80 log-spaced distances from 0.5 to 200 km, alpha step 0.01, 10000
    iterations and perfect CSIT.

    Raises
    ------
    ConfigError
        For unknown keys, unparseable values or violated bounds.
    OSError
        If `path` cannot be read.
    """
    text = ''
    if path is not None:
        with open(path, encoding='utf-8') as fh:
            text = fh.read()
    return parse_config_text(text, overrides, source=str(path or '<flags>'))


# CSV
RATES_HEADER = ('D_km', 'scheme', 'alpha', 'mean_rate_bps_hz', 'std_error',
                'n_iter', 'seed')
CORRELATION_HEADER = ('D_km', 'rho')


def format_float(x):
    """17 significant digits: enough for an exact round trip of a double."""
    return format(float(x), '.17g')


def write_rates_csv(result, fh):
    writer = csv.writer(fh, lineterminator='\n')
    writer.writerow(RATES_HEADER)
    for r in result.rows:
        writer.writerow([format_float(r.distance / 1000.0), r.scheme,
                         format_float(r.alpha), format_float(r.mean_rate),
                         format_float(r.std_error), r.iterations, r.seed])


def read_rates_csv(fh):
    """Rows of a rates CSV as dicts with numeric fields converted."""
    reader = csv.DictReader(fh)
    if tuple(reader.fieldnames or ()) != RATES_HEADER:
        raise ValueError("unexpected header {0}".format(reader.fieldnames))
    out = []
    for row in reader:
        out.append(dict(D_km=float(row['D_km']), scheme=row['scheme'],
                        alpha=float(row['alpha']),
                        mean_rate_bps_hz=float(row['mean_rate_bps_hz']),
                        std_error=float(row['std_error']),
                        n_iter=int(row['n_iter']), seed=int(row['seed'])))
    return out


def write_correlation_csv(distances, rhos, fh):
    writer = csv.writer(fh, lineterminator='\n')
    writer.writerow(CORRELATION_HEADER)
    for d, rho in zip(distances, rhos):
        writer.writerow([format_float(d / 1000.0), format_float(rho)])


def read_correlation_csv(fh):
    reader = csv.DictReader(fh)
    if tuple(reader.fieldnames or ()) != CORRELATION_HEADER:
        raise ValueError("unexpected header {0}".format(reader.fieldnames))
    return [(float(r['D_km']), float(r['rho'])) for r in reader]


def rows_from_csv(fh):
    """Rebuild a :class:`SweepResult` (without rho) from a rates CSV."""
    return SweepResult([RatePoint(r['D_km'] * 1000.0, r['scheme'], r['alpha'],
                                  r['mean_rate_bps_hz'], r['std_error'],
                                  math.nan, r['n_iter'], r['seed'])
                        for r in read_rates_csv(fh)])


# Manifest
def make_manifest(scenario, sweep, command, output, version, extra=None):
    """Fully resolved description of a run, JSON-serializable."""
    manifest = {
        'tool': 'leorsma',
        'version': version,
        'timestamp': datetime.datetime.now(datetime.timezone.utc).isoformat(),
        'command': command,
        'output': str(output),
        'scenario': asdict(scenario),
        'sweep': asdict(sweep),
    }
    if extra:
        manifest.update(extra)
    return manifest


def load_manifest(source):
    """(Scenario, SweepConfig) from a manifest dict, JSON string or file path."""
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        if not text.lstrip().startswith('{'):
            with open(text, encoding='utf-8') as fh:
                text = fh.read()
        data = json.loads(text)
    try:
        sc = dict(data['scenario'])
        sw = dict(data['sweep'])
    except (KeyError, TypeError):
        raise ConfigError("manifest lacks 'scenario' or 'sweep' section")
    known_sc = {f.name for f in fields(Scenario)}
    known_sw = {f.name for f in fields(SweepConfig)}
    unknown = sorted((set(sc) - known_sc) | (set(sw) - known_sw))
    if unknown:
        raise ConfigError("unknown key {0!r} in manifest".format(unknown[0]))
    sw['iteration_overrides'] = [tuple(p) for p in sw.get(
        'iteration_overrides', ())]
    try:
        return Scenario(**sc), SweepConfig(**sw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc))


def dump_manifest(manifest):
    buf = io.StringIO()
    json.dump(manifest, buf, indent=2, sort_keys=True)
    buf.write('\n')
    return buf.getvalue()
