from setuptools import find_packages, setup

setup(
    name="fracreduce",
    version="0.1.0",
    description="Reduction of rational-order fractional integral equations to integer order",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    python_requires=">=3.9",
    install_requires=[
        "pydantic>=2.0.0",
        "loguru>=0.7.0",
        "click>=8.1.0",
        "rich>=13.0.0",
        "numpy>=1.24.0",
        "scipy>=1.10.0",
    ],
    extras_require={
        "dev": ["pytest>=7.4.0", "black>=23.0.0", "flake8>=6.0.0"],
    },
    entry_points={
        "console_scripts": [
            "fracreduce=tools.fracreduce_cli:cli",
        ],
    },
)
