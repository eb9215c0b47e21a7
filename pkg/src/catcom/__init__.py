"""catcom: deciders and desk-scale checkers for commutativity phenomena
in universal algebra and category theory.

Modules
-------
term      syntax: signatures, terms, presentations, sound equality check
clone     tabulated theories, commutativity checkers, centralizer clones
model     finite models, commuting pairs, the tensor correspondence
tensor    coproduct/commuting tensor of presentations; monoids; graded case
operad    symmetric operads, the theory functor, the Boardman-Vogt tensor
structcat finite categories, funny tensor, sesquicategories, premonoidal
cli       the `catcom` command-line front end
"""

__version__ = "0.1.0"
