"""
Módulo de testes unitários dos repositórios
""" 