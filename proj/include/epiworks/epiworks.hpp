#pragma once

// Umbrella header: words and identities over the unary-semigroup signature,
// finite models with derived pseudoinversion, the one-letter normalizer,
// deduction checking, and the stock structure catalog.

#include "epiworks/catalog.hpp"
#include "epiworks/deduction.hpp"
#include "epiworks/epigroup.hpp"
#include "epiworks/identity.hpp"
#include "epiworks/parse.hpp"
#include "epiworks/rewrite.hpp"
#include "epiworks/table.hpp"
#include "epiworks/varieties.hpp"
#include "epiworks/word.hpp"
