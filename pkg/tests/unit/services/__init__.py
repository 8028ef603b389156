"""
Módulo de testes unitários dos serviços
""" 