from setuptools import setup, find_packages

setup(
    name='PebblePath',
    version='0.1',
    packages=find_packages(),
    package_data={'pebblepath': ['etc/*.cfg']},
    license='',
    install_requires=['textui', 'configobj', 'networkx', 'numpy'],
    description='Pebble-relation comonad, pebble games and pathwidth-bounded homomorphism counting',
    entry_points={
        'console_scripts': ['pebblepath=pebblepath.console_main:main']
    }
)
