#pragma once

#include "defbil/algebra.hpp"
#include "defbil/axioms.hpp"
#include "defbil/bits.hpp"
#include "defbil/closure.hpp"
#include "defbil/corpus.hpp"
#include "defbil/doubled.hpp"
#include "defbil/downsets.hpp"
#include "defbil/errors.hpp"
#include "defbil/homomorphism.hpp"
#include "defbil/io.hpp"
#include "defbil/isomorphism.hpp"
#include "defbil/lattice.hpp"
#include "defbil/multisorted.hpp"
#include "defbil/piggyback.hpp"
#include "defbil/poset.hpp"
#include "defbil/priestley.hpp"
#include "defbil/ranked.hpp"
#include "defbil/subuniverse.hpp"
