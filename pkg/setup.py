from setuptools import setup, find_packages
from os import path
#
here = path.abspath(path.dirname(__file__))
#
# Get the long description from the README file
with open(path.join(here, 'README.md')) as f:
    long_description = f.read()
#
setup(
    name='cosinepuzzle',
    version='0.0.1',
    description='Dynamic rays, Yoccoz-style puzzles and renormalization checks for the cosine family',
    long_description=long_description,
    license='MIT',
    # See https://pypi.python.org/pypi?%3Aaction=list_classifiers
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Developers',
        'Intended Audience :: Science/Research',
        'Operating System :: OS Independent',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3',
		'Topic :: Software Development :: Libraries',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Visualization',
    ],
    keywords='complex dynamics julia set cosine puzzle renormalization',
    packages=find_packages(exclude=['tests']),
    install_requires=['numpy', 'scipy', 'matplotlib'],
    entry_points={
        'console_scripts': ['cosinepuzzle = cosinepuzzle.cli:main'],
    },
)
