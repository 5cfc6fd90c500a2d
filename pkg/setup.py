#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup, find_packages

with open('README.md') as readme_file:
    readme = readme_file.read()

requirements = [
    "numpy",
    "sympy",
    "tqdm",
]

test_requirements = [
    "pytest",
    "hypothesis",
]

setup(
    name='sisct',
    version='0.1.0',
    description="(2,3) secret image sharing with cheater detection for cheque truncation",
    long_description=readme,
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=['tests', 'tests.*']),
    include_package_data=True,
    install_requires=requirements,
    extras_require={'test': test_requirements},
    tests_require=test_requirements,
    entry_points={'console_scripts': ['sisct=sisct.__main__:main']},
    license="MIT license",
    zip_safe=False,
    keywords='secret-image-sharing visual-cryptography cheque-truncation',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Developers',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3.7',
    ],
    python_requires='>=3.7',
    test_suite='tests',
)
