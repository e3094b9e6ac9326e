from gridnet.readers.ext.matpower import MatpowerCaseReader, parse_matpower_case
from gridnet.readers.ext.json_case import JsonCaseReader, parse_network_json
