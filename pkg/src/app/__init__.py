"""tau-workbench: bound quiver algebras, Tits forms and tau-tilting enumeration."""

