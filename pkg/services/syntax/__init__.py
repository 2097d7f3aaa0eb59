"""Sintaxe de comandos regulares: AST, parser, impressão e variáveis."""

from services.syntax.parser import parse_aexp, parse_assertion, parse_command, parse_program
from services.syntax.printer import pretty_print, print_aexp, print_bexp, print_program
from services.syntax.variables import free_vars, mod_vars

__all__ = [
    "free_vars",
    "mod_vars",
    "parse_aexp",
    "parse_assertion",
    "parse_command",
    "parse_program",
    "pretty_print",
    "print_aexp",
    "print_bexp",
    "print_program",
]
