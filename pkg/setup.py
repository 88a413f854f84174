from setuptools import setup

dependencies = ['numpy', 'sympy', 'jinja2', 'python-dotenv']

setup(
    name='superelliptic-supersingular',
    description='Point counting, L-polynomials and Newton polygons of superelliptic curves over finite fields',
    packages=['superelliptic'],
    package_data={'superelliptic': ['templates/*.txt']},
    install_requires=dependencies,
    extras_require={'test': ['pytest']},
    entry_points={'console_scripts': ['supersingular-verify=superelliptic.cli:main']},
)
