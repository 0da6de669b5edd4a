"""
    Setup.py for deploying this distribution
"""
import pathlib

from setuptools import find_packages, setup

# Get the directory that this file is in
DIR = pathlib.Path(__file__).parent

# Read the text of the markdown file
README = (DIR / "README.md").read_text()

# Setup the pip package
setup(
    name="emigdsw",
    version="0.1.0",
    description="GDSW preconditioned simulations of the cell-by-cell (EMI) cardiac model",
    long_description=README,
    long_description_content_type="text/markdown",
    license="MIT",
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Environment :: Console",
        "Operating System :: POSIX :: Linux",
        "Operating System :: MacOS",
        "Development Status :: 2 - Pre-Alpha",
    ],
    packages=find_packages(),
    include_package_data=True,
    python_requires=">=3.8",
    setup_requires=["wheel"],
    install_requires=[
        "numpy==1.26.4",
        "scipy==1.11.4",
        "pandas==2.1.4",
        "psutil==5.9.8",
        "tinydb==4.8.0",
        "colorama==0.4.6",
    ],
    entry_points={"console_scripts": ["emigdsw=emigdsw.__main__:start_execution"]},
)
