import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

# Importação da Configuração
from config import settings
from utils.logging_config import configure_logging
from utils.utils import parse_level

from services.cli.commands import run
from services.cli.models import EXIT_ERROR, OutputFormat, RunConfig
from services.taxonomy.campaigns import ALL_PROPERTIES
from services.triples.models import Logic


def _common_options() -> argparse.ArgumentParser:
    """Opções aceitas por todos os subcomandos."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", dest="output_format", choices=[item.value for item in OutputFormat], default="text")
    parent.add_argument("--domain", type=int, default=settings.DEFAULT_DOMAIN, help="módulo B do domínio ℤ_B")
    parent.add_argument("--sep-locs", type=int, default=None, help="localizações do modelo de heap")
    parent.add_argument("--sep-ints", default=None, help="intervalo de inteiros do heap, ex.: 0..1")
    parent.add_argument("--log-level", default=settings.LOG_LEVEL)
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logic-toolkit",
        description="Checagem de triplas HL/IL/NC/SIL, derivações SIL e Separation SIL em domínios finitos.",
    )
    common = _common_options()
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[common], help="valida uma tripla")
    check.add_argument("program")
    check.add_argument("--logic", required=True, type=str.upper, choices=[logic.value for logic in Logic])
    check.add_argument("--pre", required=True)
    check.add_argument("--post", required=True)

    infer = commands.add_parser("infer", parents=[common], help="pré-condição SIL mais fraca")
    infer.add_argument("program")
    infer.add_argument("--post", required=True)
    infer.add_argument("--emit-derivation", default=None, metavar="ARQUIVO")

    proof = commands.add_parser("check-proof", parents=[common], help="confere uma derivação")
    proof.add_argument("derivation")
    proof.add_argument("--program", required=True)
    proof.add_argument("--sep", action="store_true", help="derivação de Separation SIL")
    proof.add_argument("--strict", action="store_true", help="rejeita a regra iter")

    sep = commands.add_parser("sep-check", parents=[common], help="valida uma tripla de Separation SIL")
    sep.add_argument("program")
    sep.add_argument("--pre", required=True)
    sep.add_argument("--post", required=True)

    fuzz = commands.add_parser("fuzz", parents=[common], help="campanhas de propriedades")
    fuzz.add_argument("--seed", type=int, default=None)
    fuzz.add_argument("--instances", type=int, default=None)
    fuzz.add_argument("--workers", type=int, default=None)
    fuzz.add_argument(
        "--property", dest="properties", action="append", choices=list(ALL_PROPERTIES) + ["all"], default=None
    )
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        level = parse_level(args.log_level)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ERROR
    configure_logging("logic-toolkit", settings.LOG_FILE if settings.LOG_TO_FILE else None, level)
    options = {name: value for name, value in vars(args).items() if name != "log_level"}
    try:
        cfg = RunConfig(**options)
    except ValidationError as exc:
        logging.getLogger("logic-toolkit").error("argumentos inválidos: %s", exc)
        return EXIT_ERROR
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
