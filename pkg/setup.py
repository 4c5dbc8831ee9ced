#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

from setuptools import setup
import pathlib

here = pathlib.Path(__file__).parent.resolve()

# Get the long description from the README file
long_description = (here / 'README.md').read_text(encoding='utf-8')

# load elements of version.py
exec(open(here / 'qdmgate' / 'version.py').read())

setup(
    name='qdmgate',
    version=__version__,
    description="Master equation simulation of an all optical controlled "
                "phase gate in a quantum dot molecule",
    long_description=long_description,
    long_description_content_type='text/markdown',
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Physics',
    ],
    keywords='quantum dot molecule, lindblad, master equation, '
             'controlled phase gate, adiabatic passage',
    license='MIT',
    packages=['qdmgate'],
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.21,<3',
        'scipy>=1.9,<2',
    ],
    entry_points={
        'console_scripts': [
            'qdmgate=qdmgate.cli:main',
        ],
    },
)
