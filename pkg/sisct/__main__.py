import argparse
import logging
import os
import sys
from pathlib import Path

from sisct.commitments import ClaimError, ParamsError, dumps_params, hash_pool, loads_params, make_params, \
    random_prime, verify
from sisct.cts import ScenarioConfigError, TamperError, load_scenario_config, run_scenarios, tamper_share_bytes, \
    write_transcript
from sisct.image_io import DimensionMismatchError, ImageFormatError, ShareFormatError, load_image, load_share, mse, \
    packed_payload_size, read_share, read_share_header, save_image, save_share, share_to_pgm
from sisct.rng import random_source
from sisct.schemes import DuplicateShareIndexError, SchemeMismatchError, reconstruct, scheme_pool

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_VERIFICATION = 3
EXIT_REJECTED = 4

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')

_USAGE_ERRORS = (DuplicateShareIndexError, ClaimError, TamperError)
_FORMAT_ERRORS = (OSError, ImageFormatError, ShareFormatError, SchemeMismatchError, DimensionMismatchError,
                  ParamsError, ScenarioConfigError)


class UsageError(Exception):
    pass


def _test_mode() -> bool:
    return os.getenv('SISCT_TEST_MODE', '').lower() in ('1', 'true', 'yes')


def _rng(args):
    if args.seed is None and _test_mode():
        raise UsageError(f"{args.command} needs an explicit --seed while SISCT_TEST_MODE is set")
    return random_source(args.seed)


def _load_params(path):
    return loads_params(Path(path).read_bytes())


def split(args):
    rng = _rng(args)
    image = load_image(args.input)
    triple = scheme_pool[args.scheme].split(image, rng)
    params = make_params(triple, p=args.prime, rng=rng)
    prefix = str(args.out_prefix)
    for share in triple:
        save_share(f"{prefix}.{share.index}.shr", share)
        if args.pgm:
            Path(f"{prefix}.{share.index}.pgm").write_bytes(share_to_pgm(share))
    Path(f"{prefix}.params").write_text(dumps_params(params))
    logger.info(f"Wrote {args.scheme} shares and params to {prefix}.*")
    return EXIT_OK


def reconstruct_command(args):
    data = [Path(path).read_bytes() for path in args.shares]
    if args.params is not None:
        # a share whose payload does not parse is still a claim under its header index
        indices = [read_share_header(blob)[1] for blob in data]
        if indices[0] == indices[1]:
            raise DuplicateShareIndexError(f"both shares carry index {indices[0]}")
        report = verify(_load_params(args.params), dict(zip(indices, data)))
        if not report.honest:
            sys.stdout.write(report.render())
            print(f"sisct: error: refusing to reconstruct, cheating shares {list(report.cheaters)}", file=sys.stderr)
            return EXIT_VERIFICATION
    a, b = (read_share(blob) for blob in data)
    if a.scheme is not b.scheme:
        raise SchemeMismatchError(f"cannot combine a {a.scheme.label} share with a {b.scheme.label} share")
    if a.index == b.index:
        raise DuplicateShareIndexError(f"both shares carry index {a.index}")
    save_image(args.out, reconstruct(a, b))
    return EXIT_OK


def _parse_claim(text):
    index, separator, path = text.partition('=')
    if not separator or not index.strip().isdigit():
        raise UsageError(f"claim must look like <index>=<share file>, got {text!r}")
    return int(index), path


def verify_command(args):
    params = _load_params(args.params)
    claims = [_parse_claim(text) for text in args.claim]
    indices = [index for index, _ in claims]
    if len(set(indices)) != len(indices):
        raise ClaimError(f"duplicate participant index in {indices}")
    for index in indices:
        if not 1 <= index <= params.n:
            raise ClaimError(f"participant index {index} outside 1..{params.n}")
    report = verify(params, [(index, Path(path).read_bytes()) for index, path in claims])
    sys.stdout.write(report.render())
    return EXIT_OK if report.honest else EXIT_VERIFICATION


def params_command(args):
    if args.show is not None:
        sys.stdout.write(dumps_params(_load_params(args.show)))
        return EXIT_OK
    if args.out is None:
        raise UsageError("params needs --out when committing shares")
    rng = _rng(args)
    shares = sorted((load_share(path) for path in args.shares), key=lambda share: share.index)
    prime = random_prime(args.bits, rng) if args.bits is not None else args.prime
    params = make_params(shares, p=prime, rng=rng, hash_id=args.hash)
    Path(args.out).write_text(dumps_params(params))
    return EXIT_OK


def simulate(args):
    configs = [load_scenario_config(path) for path in args.config]
    results = run_scenarios(configs, progress=len(configs) > 1)
    exit_code = EXIT_OK
    for path, result in zip(args.config, results):
        if len(results) > 1:
            print(f"# {path}")
        print(result.outcome)
        if result.accepted:
            print(f"mse {result.mse:g}")
        else:
            exit_code = EXIT_REJECTED
        if result.inquiry is not None:
            print(f"inquiry {result.inquiry.render()}")
        if args.transcript_dir is not None:
            directory = Path(args.transcript_dir)
            if len(results) > 1:
                directory = directory / Path(path).stem
            write_transcript(result.transcript, directory)
    return exit_code


def tamper(args):
    data = Path(args.share).read_bytes()
    read_share(data)
    tampered = tamper_share_bytes(data, args.offset, args.xor_byte)
    Path(args.out or args.share).write_bytes(tampered)
    return EXIT_OK


def mse_command(args):
    print(f"{mse(load_image(args.a), load_image(args.b)):g}")
    return EXIT_OK


def compare(args):
    """measured share size and reconstruction error of both schemes on one image"""
    rng = _rng(args)
    image = load_image(args.input)
    pixel_count = image.width * image.height
    for name, scheme in scheme_pool.items():
        triple = scheme.split(image, rng)
        share_bytes = packed_payload_size(scheme.scheme, image.width, image.height)
        errors = ' '.join(f"mse({a.index},{b.index})={mse(image, reconstruct(a, b)):g}"
                          for a, b in [(triple.sc1, triple.sc2), (triple.sc1, triple.sc3),
                                       (triple.sc2, triple.sc3)])
        print(f"{name} share_bytes={share_bytes} ratio={share_bytes / pixel_count:g} {errors}")
    return EXIT_OK


def _int(text):
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(prog='sisct', description="(2,3) secret image sharing for cheque truncation")
    parser.add_argument('--log_level', type=str.upper, choices=LOG_LEVELS,
                        default=os.getenv('SISCT_LOG_LEVEL', 'INFO').upper())
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    command = commands.add_parser('split', help="split an image into three shares and a params file")
    command.add_argument('--scheme', choices=sorted(scheme_pool.keys()), required=True)
    command.add_argument('--in', dest='input', required=True)
    command.add_argument('--out-prefix', required=True)
    command.add_argument('--seed', type=_int)
    command.add_argument('--prime', type=_int)
    command.add_argument('--pgm', action='store_true', help="also write PGM previews of the shares")
    command.set_defaults(handler=split)

    command = commands.add_parser('reconstruct', help="rebuild the image from two shares")
    command.add_argument('--shares', nargs=2, required=True)
    command.add_argument('--out', required=True)
    command.add_argument('--params')
    command.set_defaults(handler=reconstruct_command)

    command = commands.add_parser('verify', help="check presented shares against the published params")
    command.add_argument('--params', required=True)
    command.add_argument('--claim', nargs='+', required=True, metavar='INDEX=SHARE')
    command.set_defaults(handler=verify_command)

    command = commands.add_parser('params', help="commit to existing shares, or show a params file")
    source = command.add_mutually_exclusive_group(required=True)
    source.add_argument('--shares', nargs=3)
    source.add_argument('--show')
    command.add_argument('--out')
    modulus = command.add_mutually_exclusive_group()
    modulus.add_argument('--prime', type=_int)
    modulus.add_argument('--bits', type=_int)
    command.add_argument('--seed', type=_int)
    command.add_argument('--hash', choices=sorted(hash_pool.keys()))
    command.set_defaults(handler=params_command)

    command = commands.add_parser('simulate', help="run clearing scenarios")
    command.add_argument('--config', nargs='+', required=True)
    command.add_argument('--transcript-dir')
    command.set_defaults(handler=simulate)

    command = commands.add_parser('tamper', help="flip one payload byte of a share file")
    command.add_argument('--share', required=True)
    command.add_argument('--offset', type=_int, required=True)
    command.add_argument('--xor-byte', type=_int, required=True)
    command.add_argument('--out')
    command.set_defaults(handler=tamper)

    command = commands.add_parser('mse', help="mean squared error between two images")
    command.add_argument('--a', required=True)
    command.add_argument('--b', required=True)
    command.set_defaults(handler=mse_command)

    command = commands.add_parser('compare', help="share size and reconstruction error of both schemes")
    command.add_argument('--in', dest='input', required=True)
    command.add_argument('--seed', type=_int)
    command.set_defaults(handler=compare)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    # argparse does not check defaults against choices
    if args.log_level not in LOG_LEVELS:
        print(f"sisct: error: unknown log level {args.log_level!r}, known: {list(LOG_LEVELS)}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(stream=sys.stderr, level=logging.getLevelName(args.log_level),
                        format='%(asctime)-15s %(levelname)s:%(name)s:%(message)s')
    logger.info(f"Running sisct {' '.join(argv)}")
    try:
        return args.handler(args)
    except (UsageError,) + _USAGE_ERRORS as e:
        print(f"sisct: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except _FORMAT_ERRORS as e:
        print(f"sisct: error: {e}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == '__main__':
    sys.exit(main())
