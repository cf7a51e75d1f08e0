#!/usr/bin/env python

from setuptools import setup, find_packages

import colfin


__AUTHOR__ = 'The colfin developers'
__AUTHOR_EMAIL__ = 'colfin@users.noreply.github.com'

readme = open('README.rst').read() + '\n\n' + open('CHANGELOG.rst').read()

setup(
    name='colfin',
    version=colfin.__version__,
    description='Exact algebra on column-finite infinite matrices',
    author=__AUTHOR__,
    author_email=__AUTHOR_EMAIL__,
    include_package_data=True,
    maintainer=__AUTHOR__,
    maintainer_email=__AUTHOR_EMAIL__,
    license='MIT',
    keywords='lie algebra infinite matrices ideals derivations exact arithmetic',
    long_description=readme,
    packages=find_packages(exclude=['test']),
    package_data={'colfin': ['py.typed']},
    platforms=['any'],
    python_requires='>=3.7',
    install_requires=[
        'docopt',
        'jsonschema>=3.0',
    ],
    entry_points={
        'console_scripts': ['colfin = colfin.cli:main'],
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Typing :: Typed',
    ],
    extras_require={
        'testing': [
            'pytest',
            'docopt',
            'hypothesis',
            'jsonschema>=3.0',
        ],
        'qa': [
            'flake8==3.8.3',
            'mypy==0.782',
        ],
    },
)
