#pragma once

#include "hgm/cyclotomic.hpp"
#include "hgm/elliptic.hpp"
#include "hgm/exponents.hpp"
#include "hgm/finite_field.hpp"
#include "hgm/gauss.hpp"
#include "hgm/hodge.hpp"
#include "hgm/integers.hpp"
#include "hgm/matrix.hpp"
#include "hgm/monodromy.hpp"
#include "hgm/nsearch.hpp"
#include "hgm/poly.hpp"
#include "hgm/residue.hpp"
