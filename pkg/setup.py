#!/usr/bin/env python3
"""morphologic - Setup

Copyright (c) 2024 morphologic developers
"""

from setuptools import setup

from morphologic import VERSION


setup(
    name='morphologic',
    version='.'.join(str(v) for v in VERSION),
    packages=['morphologic'],
    entry_points={
        'console_scripts': [
            'morphologic=morphologic.cli:main',
        ],
    },
    package_data={
        'morphologic': [
            'templates/abduction.txt',
            'templates/derivation.txt',
            'templates/eval.txt',
            'templates/rcc8.txt',
            'templates/revision.txt',
            'templates/sequent.txt',
            'templates/suite.txt',
            'templates/validate.txt',
        ]
    },
    install_requires=[
        'jinja2',
        'pyparsing>=3.0',
        'tqdm',
    ],
    python_requires='>=3.8',
    author='morphologic developers',
    license='MIT',
    platforms='POSIX',
    description='Mathematical morphology and modal reasoning over finite '
                'toposes',
)
