"""Setup cstartools."""

from setuptools import setup

setup(name='cstartools',
      description='Compute with finite-dimensional C*-algebras: spectra,'
                  ' GNS, group algebras, crossed products, K_0.',
      packages=['cstartools'],
      package_dir={'cstartools': 'cstartools'},
      install_requires=['setuptools', 'numpy', 'scipy', 'pandas', 'dask',
                        'sympy'],
      entry_points={'console_scripts': ['cstartools = cstartools.cli:main']},
      zip_safe=False)
