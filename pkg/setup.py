from setuptools import setup, find_packages

setup(
    name="snc-lab",
    version="0.1.0",
    author="thiswillbeyourgithub",
    description="Exact checks, fixtures and counterexample search around the second neighbourhood conjecture, with a CLI.",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    url="https://github.com/thiswillbeyourgithub/snc-lab/",
    keywords=[
        "graph theory",
        "digraph",
        "tournament",
        "second neighbourhood conjecture",
        "counterexample",
        "exact arithmetic",
        "linear programming",
        "cli",
    ],
    packages=find_packages(include=["snc_lab", "snc_lab.*"]),
    install_requires=[
        "click>=8.1.8",
        "loguru>=0.7.0",
        "platformdirs>=3.0.0",
        "tqdm>=4.66.0",
    ],
    extras_require={
        "dev": [
            "dotenv>=0.9.9",
            "black>=25.1.0",
            "twine>=6.1.0",
            "build>=1.2.2.post1",
            "bumpver>=2024.1130",
            "pytest>=8.3.5",
            "pre-commit>=4.2.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "snc-lab=snc_lab.__main__:cli",
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.10",
)
