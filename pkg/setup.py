from setuptools import setup, find_packages

wnetkat_version = "0.1.0"

with open("README.md", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="wnetkat",
    version=wnetkat_version,
    description="Weighted NetKAT: quantitative network verification with weighted automata",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    python_requires=">=3.7",
    install_requires=[
        "pyyaml",
        "numpy",
        "pandas",
    ],
    extras_require={
        "tests": ["pytest", "hypothesis"],
    },
    entry_points={
        "console_scripts": [
            "wnk=wnetkat.scripts.wnk_cli:main",
        ],
    },
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"wnetkat": ["conf.yml", "assets/*.json", "assets/*.wnk"]},
    include_package_data=True,
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
)
