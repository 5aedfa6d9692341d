from setuptools import setup

setup(
    name='hyperverify',
    version='0.1.0',
    description='Hypergeometric special-function numerics and identity verification harness.',
    license='unlicense',
    install_requires=[
        "numpy", "scipy", "pandas", "click<8.2", "python-dotenv"],
    extras_require={"test": ["mpmath"]},
    packages=['hyperverify'],
    entry_points={"console_scripts": ["hyperverify=hyperverify.cli:main"]},
    zip_safe=False
)
