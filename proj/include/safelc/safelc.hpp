// Umbrella header.
#pragma once

#include "safelc/corpus.hpp"
#include "safelc/encodings.hpp"
#include "safelc/games.hpp"
#include "safelc/hardness.hpp"
#include "safelc/properties.hpp"
#include "safelc/qbf.hpp"
#include "safelc/qbf_oracle.hpp"
#include "safelc/reduction.hpp"
#include "safelc/syntax.hpp"
#include "safelc/term.hpp"
#include "safelc/type.hpp"
#include "safelc/typing.hpp"
