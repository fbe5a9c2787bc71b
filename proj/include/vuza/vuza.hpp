#pragma once

#include "vuza/catalog.hpp"
#include "vuza/constructions.hpp"
#include "vuza/enumeration.hpp"
#include "vuza/orders.hpp"
#include "vuza/zn.hpp"
