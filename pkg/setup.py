from setuptools import setup

setup(
    name='heckecat',
    version='0.1.0',
    description='Exact computations in the characteristic-p affine Hecke category and sl2 modular representations',
    license='AGPL-3.0-only',
    packages=['heckecat'],
    zip_safe=False,
    python_requires='>=3.8',
    include_package_data=True,
    install_requires=[
        'marshmallow>=3.2.0,<4',
        'colorama>=0.4.1',
        'structlog>=19.2.0,<24',
        'cached-property>=1.5.1',
        'orjson>=3.6.0',
        'numpy>=1.21.0',
        'galois>=0.3.0',
        'sympy>=1.9'
    ],
    entry_points={
        'console_scripts': ['heckecat=heckecat.cli:main']
    }
)
