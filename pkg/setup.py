from setuptools import setup, find_packages

setup(
    name="zcge",
    version="0.3.0",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    py_modules=[
        "classification",
        "cli",
        "cyclo",
        "demo",
        "errors",
        "finitering",
        "ge_types",
        "intpoly",
        "logging_setup",
        "odring",
        "reports",
        "version",
    ],
    install_requires=[
        "sympy>=1.12",
        "numpy>=1.24",
        "pytest>=7.0",
        "tqdm>=4.67.1",
        "genson>=1.0.0",
    ],
    python_requires=">=3.8",
    entry_points={
        "console_scripts": [
            "zcge=cli:main",
        ],
    },
)
