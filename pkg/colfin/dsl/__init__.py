"""
The expression language: token types, the tokenizer and the
recursive-descent parser building :mod:`colfin.tree` expressions.
"""
