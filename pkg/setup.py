from setuptools import setup, find_packages

setup(
    name="frolicher",
    version="0.1.0",
    packages=find_packages(include=["src", "src.*"]),
    include_package_data=True,
    install_requires=[
        "python-dotenv>=1.0.0",
        "pydantic>=2.0.0",
        "pyparsing>=3.0.0",
    ],
    entry_points={"console_scripts": ["frolicher=src.cli.main:main"]},
    python_requires=">=3.10",
)
