"""Pacote raiz do toolkit de lógicas de programas.

O pacote permanece intencionalmente leve para evitar imports transitivos
caros (numpy) durante a inicialização da CLI.
"""
