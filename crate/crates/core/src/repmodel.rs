pub struct BlockModel;
