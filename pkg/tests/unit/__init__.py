"""
Módulo de testes unitários
""" 