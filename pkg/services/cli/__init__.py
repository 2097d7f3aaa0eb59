"""Interface de linha de comando: subcomandos, configuração de execução e saída."""

from services.cli.commands import COMMANDS, run
from services.cli.models import OutputFormat, RunConfig

__all__ = ["COMMANDS", "OutputFormat", "RunConfig", "run"]
