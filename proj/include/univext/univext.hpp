#ifndef UNIVEXT_UNIVEXT_HPP
#define UNIVEXT_UNIVEXT_HPP

#include "univext/rational.hpp"
#include "univext/exactla.hpp"
#include "univext/liealg.hpp"
#include "univext/invforms.hpp"
#include "univext/calg.hpp"
#include "univext/current.hpp"
#include "univext/cohom.hpp"
#include "univext/loopforms.hpp"
#include "univext/bundles.hpp"
#include "univext/json_io.hpp"
#include "univext/verify.hpp"

#endif
