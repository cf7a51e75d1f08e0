"""
JSON schemas (draft 7) of everything colfin reads or writes. Scalars are
strings in the text form of their field (``"-1/3"``, ``"2 mod 5"``), so
that no precision is lost.
"""

_DRAFT = 'http://json-schema.org/draft-07/schema#'

_INT = {'type': 'integer'}
_INDEX = {'type': 'integer', 'minimum': 1}
_NONNEGATIVE = {'type': 'integer', 'minimum': 0}
_SCALAR = {'type': 'string', 'minLength': 1}
_FIELD = {'type': 'string', 'pattern': '^(q|z|fp:[0-9]+)$'}
_SIDE = {'enum': ['n', 'z']}
_BIT = {'enum': [0, 1]}


def _object(required, properties):
    return {
        'type': 'object',
        'required': list(required),
        'properties': properties,
        'additionalProperties': False,
    }


def _pair(first, second):
    return {'type': 'array', 'items': [first, second], 'minItems': 2, 'maxItems': 2}


_DEFINITIONS = {
    'seq': _object(['prefix', 'period'], {
        'prefix': {'type': 'array', 'items': _SCALAR},
        'period': {'type': 'array', 'items': _SCALAR, 'minItems': 1},
    }),
    'set': _object(['prefix', 'period'], {
        'prefix': {'type': 'array', 'items': _BIT},
        'period': {'type': 'array', 'items': _BIT, 'minItems': 1},
    }),
    'zseq': _object(['neg', 'pos'], {
        'neg': {'$ref': '#/definitions/seq'},
        'pos': {'$ref': '#/definitions/seq'},
    }),
    'zset': _object(['neg', 'pos'], {
        'neg': {'$ref': '#/definitions/set'},
        'pos': {'$ref': '#/definitions/set'},
    }),
    'entries': {
        'type': 'array',
        'items': {'type': 'array', 'items': [_INT, _INT, _SCALAR], 'minItems': 3, 'maxItems': 3},
    },
}

_NODE = {'$ref': '#/definitions/node'}

_NODE_KINDS = {
    'zero': {},
    'scalar': {'value': _SCALAR},
    'basis': {'i': _INDEX, 'j': _INDEX},
    'finite': {'entries': {'$ref': '#/definitions/entries'}},
    'diag': {'seq': {'$ref': '#/definitions/seq'}},
    'shift': {'offset': _INT, 'set': {'$ref': '#/definitions/set'},
              'weights': {'$ref': '#/definitions/seq'}},
    'row': {'row': _INDEX, 'seq': {'$ref': '#/definitions/seq'}},
    'pairing': {
        'rows': {'$ref': '#/definitions/set'}, 'row_stride': _INDEX,
        'row_skip': _NONNEGATIVE, 'row_shift': _INT,
        'cols': {'$ref': '#/definitions/set'}, 'col_stride': _INDEX,
        'col_skip': _NONNEGATIVE, 'col_shift': _INT,
    },
    'shift_solve': {'child': _NODE, 'corrected': {'type': 'boolean'}},
    'sum': {'children': {'type': 'array', 'items': _NODE, 'minItems': 1}},
    'scale': {'coefficient': _SCALAR, 'child': _NODE},
    'prod': {'left': _NODE, 'right': _NODE},
    'bracket': {'left': _NODE, 'right': _NODE},
    'zbasis': {'i': _INT, 'j': _INT},
    'zfinite': {'entries': {'$ref': '#/definitions/entries'}},
    'zdiag': {'seq': {'$ref': '#/definitions/zseq'}},
    'zshift': {'offset': _INT, 'set': {'$ref': '#/definitions/zset'},
               'weights': {'$ref': '#/definitions/zseq'}},
}

NODE_KINDS = tuple(_NODE_KINDS)
"""
The ``kind`` tags of expression nodes, equal to the ``type`` of the node
classes.
"""

_DEFINITIONS['node'] = {
    'type': 'object',
    'required': ['kind'],
    'properties': {'kind': {'enum': list(NODE_KINDS)}},
    'allOf': [
        {
            'if': {'properties': {'kind': {'const': kind}}},
            'then': _object(['kind'] + list(properties),
                            dict(properties, kind={'const': kind})),
        }
        for kind, properties in _NODE_KINDS.items()
    ],
}

_STEP = {
    'type': 'object',
    'required': ['kind', 'result'],
    'properties': {'kind': {'enum': ['bracket', 'combine']}},
    'allOf': [
        {
            'if': {'properties': {'kind': {'const': 'bracket'}}},
            'then': _object(
                ['kind', 'lhs', 'rhs', 'result', 'note', 'ideal_side', 'ideal_ref'], {
                    'kind': {'const': 'bracket'},
                    'lhs': _NODE, 'rhs': _NODE, 'result': _NODE,
                    'note': {'type': 'string'},
                    'ideal_side': {'enum': ['lhs', 'rhs']},
                    'ideal_ref': {'type': 'integer', 'minimum': -1},
                }),
        },
        {
            'if': {'properties': {'kind': {'const': 'combine'}}},
            'then': _object(['kind', 'terms', 'result', 'note'], {
                'kind': {'const': 'combine'},
                'terms': {'type': 'array',
                          'items': _pair(_SCALAR, {'type': 'integer', 'minimum': -1})},
                'result': _NODE,
                'note': {'type': 'string'},
            }),
        },
    ],
}


def _document(required, properties):
    schema = _object(['field'] + list(required), dict(properties, field=_FIELD))
    schema['$schema'] = _DRAFT
    schema['definitions'] = _DEFINITIONS
    return schema


MATEXPR_SCHEMA = _document(['side', 'expr'], {'side': _SIDE, 'expr': _NODE})
"""
A single expression: ``{"field": "q", "side": "n", "expr": {"kind": ...}}``.
"""

_CHAIN_PROPERTIES = {
    'seed': {'oneOf': [_NODE, {'type': 'null'}]},
    'target': _NODE,
    'steps': {'type': 'array', 'items': _STEP},
}

CHAIN_SCHEMA = _document(['seed', 'target', 'steps'], _CHAIN_PROPERTIES)
"""
A bracket chain. References in ``ideal_ref`` and ``terms`` are 0-based step
indices, ``-1`` refers to the seed.
"""

DERIVATION_SCHEMA = _document(['inner', 'central', 'zero_extension'], {
    'inner': _NODE,
    'central': {'type': 'array', 'items': _pair(_INDEX, _SCALAR)},
    'zero_extension': {'type': 'boolean'},
})

_VERDICT = {
    'type': 'object',
    'required': ['passed'],
    'properties': {
        'passed': {'type': 'boolean'},
        'step': {'type': ['integer', 'null']},
        'entry': {'oneOf': [_pair(_INT, _INT), {'type': 'null'}]},
        'reason': {'type': 'string'},
        'expected': {'type': ['string', 'null']},
        'actual': {'type': ['string', 'null']},
    },
}

_RESIDUAL = _object(['probe', 'passed', 'entry', 'value'], {
    'probe': {'type': 'string'},
    'passed': {'type': 'boolean'},
    'entry': {'oneOf': [_pair(_INT, _INT), {'type': 'null'}]},
    'value': {'type': ['string', 'null']},
})

REPORT_SCHEMA = _document(['inner', 'sigma', 'report'], {
    'inner': _NODE,
    'sigma': {'type': 'array', 'items': _pair(_INDEX, _SCALAR)},
    'report': _object(
        ['probe_bound', 'window', 'diagonal_extension', 'antisymmetry_checks',
         'passed', 'residuals'], {
            'probe_bound': _INDEX,
            'window': _INDEX,
            'diagonal_extension': {'type': 'string'},
            'antisymmetry_checks': _NONNEGATIVE,
            'passed': {'type': 'boolean'},
            'residuals': {'type': 'array', 'items': _RESIDUAL},
        }),
})
"""
The result of ``derive-decompose``: the inner part, the central table and
the verification report.
"""

_CODE = {'type': 'string'}

OUTPUT_SCHEMAS = {
    'classify': _document(['expr', 'ideal'], {'expr': _CODE, 'ideal': _CODE}),
    'window': _document(['rows', 'cols', 'entries'], {
        'rows': _INDEX, 'cols': _INDEX,
        'entries': {'type': 'array', 'items': {'type': 'array', 'items': _SCALAR}},
    }),
    'bracket': _document(['result', 'code'], {'result': _NODE, 'code': _CODE}),
    'solve-shift': _document(['solution', 'code', 'verdict'], {
        'solution': _NODE, 'code': _CODE, 'verdict': _VERDICT,
    }),
    'witness': _document(['kind', 'verdict'], {
        'kind': _CODE,
        'chain': _object(['seed', 'target', 'steps'], _CHAIN_PROPERTIES),
        'result': _NODE,
        'witness': _NODE,
        'set': {'$ref': '#/definitions/set'},
        'central': {'type': 'boolean'},
        'verdict': _VERDICT,
    }),
    'derive-decompose': REPORT_SCHEMA,
    'reindex': _document(['direction', 'result', 'code'], {
        'direction': {'enum': ['to-n', 'to-z']},
        'result': _NODE,
        'code': _CODE,
    }),
    'lattice': _document(['ideals', 'edges'], {
        'ideals': {'type': 'array', 'items': _CODE},
        'edges': {'type': 'array', 'items': _pair(_CODE, _CODE)},
        'join': _CODE,
        'meet': _CODE,
        'leq': {'type': 'boolean'},
    }),
    'normalize': _document(['alpha', 'rows', 'tail', 'trace', 'code'], {
        'alpha': _SCALAR,
        'rows': {'type': 'array', 'items': _pair(_INDEX, {'$ref': '#/definitions/seq'})},
        'tail': {'type': 'array', 'items': _NODE},
        'trace': _SCALAR,
        'code': _CODE,
    }),
}
"""
One schema per subcommand for its ``--format json`` output.
"""
