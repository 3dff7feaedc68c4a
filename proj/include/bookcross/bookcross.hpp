#ifndef BOOKCROSS_BOOKCROSS_HPP
#define BOOKCROSS_BOOKCROSS_HPP

#include "bookcross/chordgraph.hpp"
#include "bookcross/conic.hpp"
#include "bookcross/drawings.hpp"
#include "bookcross/error.hpp"
#include "bookcross/exact.hpp"
#include "bookcross/rational.hpp"
#include "bookcross/sdpbound.hpp"
#include "bookcross/wcnf.hpp"

#endif  // BOOKCROSS_BOOKCROSS_HPP
